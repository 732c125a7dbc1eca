#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "qchan/channel.hpp"
#include "qchan/classifiers.hpp"

namespace qchan {

/// Channel file:
///   {"kind": "kraus"|"choi", "d_in": d, "d_out": d, "data": ..., "dims": [dA, dB]?}
/// For "choi", data is the row-major flattened (d²×d²) state-normalised Choi
/// matrix as [[re, im], ...]; for "kraus", a list of flattened d×d matrices.
/// Without "dims", a perfect-square dimension d = k² is read as k⊗k.
///
/// Throws ParseError for malformed documents and PreconditionError for
/// non-square or (unless allow_non_tp) non-trace-preserving channels.
Channel parse_channel_json(const std::string& text, bool allow_non_tp);
Channel load_channel_file(const std::string& path, bool allow_non_tp);
std::string channel_to_json(const Channel& ch);

/// 9 significant digits, '.' decimal separator, independent of locale.
std::string format_number(double x);
/// `x` rounded to 9 significant digits.
double round_significant(double x);

/// Serialises like json::dump(indent) but prints floating-point values with
/// format_number, so JSON and CSV reports carry identical digits.
std::string dump_json(const nlohmann::json& doc, int indent = 2);

nlohmann::json complex_vector_to_json(std::span<const Complex> v);
nlohmann::json verdict_to_json(const Verdict& v);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace qchan
