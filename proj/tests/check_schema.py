"""Validate the JSON output of every qchan command against the shipped schema."""

import json
import subprocess
import sys

import jsonschema


def main():
    qchan, schema_path, data_dir = sys.argv[1:4]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    commands = [
        ["classify", "--family", "depolarizing2", "--d", "2", "--q", "0.6"],
        ["classify", "--family", "depolarizing", "--d", "3", "--q", "0.3", "--one-sided"],
        ["classify", "--file", f"{data_dir}/id3x3.json"],
        ["threshold", "--d", "2"],
        ["sweep", "--d", "2", "--steps", "5"],
        ["profile", "--d", "3", "--q", "0.5"],
        ["conjecture", "--dmax", "3"],
    ]
    failed = False
    for cmd in commands:
        proc = subprocess.run([qchan, *cmd, "--format", "json"], capture_output=True, text=True)
        label = " ".join(cmd)
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failed = True
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: list(e.path))
        if errors:
            failed = True
            for e in errors[:5]:
                print(f"FAIL {label}: {'/'.join(map(str, e.path))}: {e.message}")
        else:
            print(f"ok   {label}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
