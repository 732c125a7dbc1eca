// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "qchan/channel.hpp"
#include "qchan/classifiers.hpp"
#include "qchan/cli.hpp"
#include "qchan/entanglement.hpp"
#include "qchan/io.hpp"
#include "qchan/random.hpp"

using namespace qchan;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

std::string fmt(double x) { return format_number(x); }

Channel random_channel(Rng& rng, std::size_t d) {
  return Channel::from_kraus(random_kraus(rng, d, 1 + static_cast<std::size_t>(rng.uniform() * 4.0)));
}

// 1
Outcome qutrit_threshold() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  const auto rows = csv_rows(run_cli({"threshold", "--d", "3"}, code));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(code == 0 && rows.size() == 2, "threshold command failed");
  if (!o.pass) return o;
  const double q = std::stod(rows[1][1]);
  const double expected = (1.0 + std::sqrt(3.0)) / (4.0 + std::sqrt(3.0));
  o.require(std::abs(q - expected) <= 1e-3, "q* = " + fmt(q));
  o.require(secs < 60.0, "took " + fmt(secs) + " s");
  if (o.pass) o.detail = "q*=" + fmt(q) + " in " + fmt(secs) + " s";
  return o;
}

// 2
Outcome minimizer_profile() {
  Outcome o;
  int code = 0;
  const auto rows = csv_rows(run_cli({"profile", "--d", "3", "--q", "0.5"}, code));
  o.require(code == 0 && rows.size() > 2 && rows.back()[0] == "argmin", "profile command failed");
  if (!o.pass) return o;
  std::vector<double> lambda{std::stod(rows.back()[1]), std::stod(rows.back()[2]), std::stod(rows.back()[3])};
  const double value = std::stod(rows.back()[4]);
  std::sort(lambda.rbegin(), lambda.rend());
  o.require(std::abs(lambda[0] - 0.5) <= 1e-3 && std::abs(lambda[1] - 0.5) <= 1e-3 && lambda[2] <= 1e-3,
            "argmin (" + fmt(lambda[0]) + ", " + fmt(lambda[1]) + ", " + fmt(lambda[2]) + ")");

  // dense solver on the explicit output at λ = (1/2, 1/2, 0)
  CVector psi(9, Complex{0.0});
  psi[0] = psi[4] = 1.0 / std::sqrt(2.0);
  const auto out = apply(depolarizing_pair(3, 0.5), projector(psi));
  const double dense = oracle::min_eigenvalue(oracle::partial_transpose_b(out, 3, 3));
  o.require(std::abs(dense + 1.0 / 72.0) <= 1e-12, "oracle " + fmt(dense));
  o.require(std::abs(value - dense) <= 1e-6, "value " + fmt(value) + " vs oracle " + fmt(dense));
  return o;
}

// 3
Outcome binding_threshold_flip() {
  Outcome o;
  for (std::size_t d : {2u, 3u, 4u}) {
    const double qb = 1.0 / (static_cast<double>(d) + 1.0);
    o.require(std::abs(oracle::isotropic_min_pt(d, qb)) <= 1e-15, "closed form nonzero at 1/(d+1)");
    for (double q : {qb - 1e-6, qb + 1e-6}) {
      const auto phi = depolarizing(d, q);
      const auto v = one_sided_ppt_inducing(phi, d);
      const bool below = q < qb;
      o.require(v.tag == (below ? VerdictTag::Certified : VerdictTag::Refuted),
                "d=" + std::to_string(d) + " q=" + fmt(q) + " gave " + to_string(v.tag));
      const double numeric = ppt_report(phi.choi().matrix(), phi.choi().cut()).min_pt_eigenvalue;
      o.require(std::abs(numeric - oracle::isotropic_min_pt(d, q)) <= 1e-12, "PT eigenvalue off closed form");
      if (!below && v.witness) {
        o.require(std::abs(v.witness->value - oracle::isotropic_min_pt(d, q)) <= 1e-12, "witness value");
      }
    }
  }
  return o;
}

// 4
Outcome gap_reproduction() {
  Outcome o;
  const SeesawConfig cfg;
  for (double q : {0.30, 0.40, 0.47}) {
    const auto binding = entanglement_binding_certify(depolarizing(3, q), cfg);
    const auto ppt = classify_ppt_inducing(depolarizing_pair(3, q), cfg);
    o.require(binding.tag == VerdictTag::Refuted, "binding at q=" + fmt(q) + " is " + to_string(binding.tag));
    o.require(ppt.tag == VerdictTag::NumericallyLikely || ppt.tag == VerdictTag::Certified,
              "pair at q=" + fmt(q) + " is " + to_string(ppt.tag));
  }
  return o;
}

// 5
Outcome conjecture_sweep() {
  Outcome o;
  int code = 0;
  const auto rows = csv_rows(run_cli({"conjecture", "--dmax", "4"}, code));
  o.require(code == 0 && rows.size() == 4, "conjecture command failed");
  if (!o.pass) return o;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::size_t d = std::stoul(rows[i][0]);
    const double measured = std::stod(rows[i][1]);
    const double formula = (1.0 + std::sqrt(3.0)) / (static_cast<double>(d) + 1.0 + std::sqrt(3.0));
    o.require(std::abs(measured - formula) <= 1e-3, "d=" + rows[i][0] + " measured " + rows[i][1]);
    // a deficit beyond tolerance must be flagged
    if (measured < formula - 1e-3) o.require(rows[i][4] == "yes", "deficit at d=" + rows[i][0] + " not flagged");
    o.require(rows[i][4] == "no", "d=" + rows[i][0] + " flagged as violation");
  }
  return o;
}

// 6
Outcome star_product() {
  Outcome o;
  Rng rng(6006);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = t < 50 ? 2 : 3;
    const auto k1 = random_kraus(rng, d, 1 + t % 3), k2 = random_kraus(rng, d, 1 + t % 4);
    std::vector<ComplexMatrix> joint;
    for (const auto& a : k1)
      for (const auto& b : k2) joint.push_back(a * b);
    const auto star = compose_star(ChoiOperator(oracle::choi(k1), d), ChoiOperator(oracle::choi(k2), d));
    worst = std::max(worst, frobenius_distance(star.matrix(), oracle::choi(joint)));
  }
  o.require(worst <= 1e-10, "composition deviation " + fmt(worst));
  double assoc = 0.0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = t < 10 ? 2 : 3;
    const auto a = random_channel(rng, d).choi(), b = random_channel(rng, d).choi(), c = random_channel(rng, d).choi();
    assoc = std::max(assoc, frobenius_distance(compose_star(a, compose_star(b, c)).matrix(),
                                               compose_star(compose_star(a, b), c).matrix()));
  }
  o.require(assoc <= 1e-10, "associativity deviation " + fmt(assoc));
  return o;
}

// 7
Outcome choi_calculus() {
  Outcome o;
  Rng rng(7007);
  double basis = 0.0, extraction = 0.0, involution = 0.0, spectrum = 0.0;
  for (std::size_t d : {2u, 3u, 4u}) {
    const auto kraus = random_kraus(rng, d, 3);
    const auto from_choi = Channel::from_choi(ChoiOperator(oracle::choi(kraus), d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        ComplexMatrix e(d, d);
        e(i, j) = 1.0;
        basis = std::max(basis, max_abs_diff(apply(from_choi, e), oracle::kraus_apply(kraus, e)));
      }
  }
  for (int t = 0; t < 50; ++t) {
    const auto om = choi_from_kraus(random_kraus(rng, 2 + t % 3, 1 + t % 5));
    extraction = std::max(extraction, max_abs_diff(choi_from_kraus(*kraus_from_choi(om).kraus()).matrix(), om.matrix()));
  }
  for (int t = 0; t < 50; ++t) {
    const std::size_t da = 2 + t % 2, db = 2 + (t / 2) % 2;
    const auto rho = random_density(rng, da * db, 1 + t % (da * db));
    const auto pt = partial_transpose(rho, {da, db}, Subsystem::B);
    involution = std::max(involution, max_abs_diff(partial_transpose(pt, {da, db}, Subsystem::B), rho));
    const auto u = kron(haar_unitary(rng, da), haar_unitary(rng, db));
    const auto e1 = oracle::eigenvalues(pt);
    const auto e2 = oracle::eigenvalues(partial_transpose(u * rho * u.adjoint(), {da, db}, Subsystem::B));
    for (std::size_t k = 0; k < e1.size(); ++k) spectrum = std::max(spectrum, std::abs(e1[k] - e2[k]));
  }
  o.require(basis <= 1e-10, "matrix-unit roundtrip " + fmt(basis));
  o.require(extraction <= 1e-10, "Kraus extraction " + fmt(extraction));
  o.require(involution <= 1e-10, "PT involution " + fmt(involution));
  o.require(spectrum <= 1e-10, "local-unitary PT spectrum " + fmt(spectrum));
  return o;
}

// 8
Outcome distillability_engines() {
  Outcome o;
  const SeesawConfig cfg;
  const auto bell = refute_one_copy_undistillability(projector(oracle::psi_plus(2)), {2, 2}, cfg);
  o.require(bell && std::abs(bell->value + 0.5) <= 1e-9, "Bell witness");
  if (bell) {
    o.require(std::abs(pt_expectation(projector(oracle::psi_plus(2)), {2, 2}, bell->vector) - bell->value) <= 1e-12,
              "Bell witness does not re-verify");
  }

  Rng rng(8008);
  int found = 0;
  for (int t = 0; t < 50; ++t) {
    ComplexMatrix rho;
    BipartiteDims dims{2 + static_cast<std::size_t>(t % 2), 2 + static_cast<std::size_t>((t / 2) % 2)};
    switch (t % 3) {
      case 0: {  // mixture of products
        rho = ComplexMatrix(dims.total(), dims.total());
        for (int k = 0; k < 3; ++k)
          rho += kron(random_density(rng, dims.a, 1), random_density(rng, dims.b, 2)) * Complex(1.0 / 3.0);
        break;
      }
      case 1: {  // isotropic below its PPT bound
        const std::size_t d = dims.a;
        dims = {d, d};
        rho = oracle::isotropic(d, rng.uniform() / (static_cast<double>(d) + 1.0));
        break;
      }
      default: {  // local-unitary image of a product state
        const auto u = kron(haar_unitary(rng, dims.a), haar_unitary(rng, dims.b));
        const auto p = kron(random_density(rng, dims.a, dims.a), random_density(rng, dims.b, dims.b));
        rho = u * p * u.adjoint();
      }
    }
    if (!ppt_report(rho, dims).is_ppt) {
      o.require(false, "suite state is not PPT");
      continue;
    }
    if (refute_one_copy_undistillability(rho, dims, cfg)) ++found;
  }
  o.require(found == 0, std::to_string(found) + " PPT states produced a witness");

  const auto iso = refute_one_copy_undistillability(oracle::isotropic(3, 0.5), {3, 3}, cfg);
  o.require(iso && std::abs(iso->value + 1.0 / 9.0) <= 1e-6, "isotropic witness");
  return o;
}

// 9
Outcome restricted_vs_unrestricted() {
  Outcome o;
  const SeesawConfig cfg;
  double worst = 0.0;
  for (std::size_t d : {2u, 3u}) {
    const double lo = depolarizing_min_q(d);
    for (int k = 0; k < 20; ++k) {
      const double q = lo + (1.0 - lo) * k / 19.0;
      const double r = schmidt_restricted_worst_case(d, q).min_value;
      const double u = worst_case_output_pt(depolarizing_pair(d, q), {d, d}, cfg).min_value;
      worst = std::max(worst, std::abs(r - u));
    }
  }
  o.require(worst <= 1e-6, "max disagreement " + fmt(worst));
  return o;
}

// 10
Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands{
      {"threshold", "--d", "3"},
      {"profile", "--d", "3", "--q", "0.5"},
      {"conjecture", "--dmax", "4"},
      {"sweep", "--d", "3", "--qmin", "0", "--qmax", "0.6", "--steps", "61"},
      {"classify", "--family", "depolarizing2", "--d", "3", "--q", "0.48", "--format", "json"},
      {"classify", "--family", "depolarizing", "--d", "3", "--q", "0.25", "--one-sided"},
  };
  const auto dir = std::filesystem::temp_directory_path() / "qchan-acceptance";
  std::filesystem::create_directories(dir);
  int index = 0;
  for (const auto& base : commands) {
    std::string contents[2];
    for (int pass = 0; pass < 2; ++pass) {
      const auto path = dir / ("run" + std::to_string(index) + "_" + std::to_string(pass));
      auto args = base;
      args.insert(args.end(), {"--seed", "7", "--out", path.string()});
      int code = 0;
      run_cli(args, code);
      o.require(code == 0, base[0] + " exited with " + std::to_string(code));
      std::ifstream in(path, std::ios::binary);
      contents[pass].assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    o.require(!contents[0].empty() && contents[0] == contents[1], base[0] + " output differs between runs");
    ++index;
  }
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 qutrit threshold", qutrit_threshold},
      {"2 minimizer profile", minimizer_profile},
      {"3 binding threshold", binding_threshold_flip},
      {"4 gap reproduction", gap_reproduction},
      {"5 conjecture sweep", conjecture_sweep},
      {"6 star-product equivalence", star_product},
      {"7 Choi calculus", choi_calculus},
      {"8 distillability engines", distillability_engines},
      {"9 restricted vs unrestricted", restricted_vs_unrestricted},
      {"10 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << (o.detail.empty() ? "" : " (" + o.detail + ")") << '\n';
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}
