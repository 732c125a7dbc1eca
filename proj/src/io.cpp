#include "qchan/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qchan/errors.hpp"

namespace qchan {

namespace {

using nlohmann::json;

std::vector<Complex> parse_flat(const json& data, std::size_t expected, const char* what) {
  if (!data.is_array()) throw ParseError(std::string(what) + ": expected an array of [re, im] pairs");
  if (data.size() != expected) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(expected) + " entries, got " +
                     std::to_string(data.size()));
  }
  std::vector<Complex> out;
  out.reserve(expected);
  for (const auto& z : data) {
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
      throw ParseError(std::string(what) + ": entries must be [re, im] number pairs");
    }
    out.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  return out;
}

std::size_t get_dimension(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 1) {
    throw ParseError(std::string("channel file: '") + key + "' must be a positive integer");
  }
  return doc[key].get<std::size_t>();
}

std::optional<BipartiteDims> subsystem_split(const json& doc, std::size_t d) {
  if (doc.contains("dims")) {
    const auto& dims = doc["dims"];
    if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() || !dims[1].is_number_integer() ||
        dims[0].get<long long>() < 1 || dims[1].get<long long>() < 1) {
      throw ParseError("channel file: 'dims' must be [dA, dB] with positive integers");
    }
    BipartiteDims out{dims[0].get<std::size_t>(), dims[1].get<std::size_t>()};
    if (out.total() != d) throw ParseError("channel file: 'dims' do not multiply to d_in");
    return out;
  }
  const auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d))));
  if (k >= 2 && k * k == d) return BipartiteDims{k, k};
  return std::nullopt;
}

}  // namespace

Channel parse_channel_json(const std::string& text, bool allow_non_tp) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("channel file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("channel file: top level must be an object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw ParseError("channel file: missing 'kind'");
  const std::string kind = doc["kind"].get<std::string>();
  const std::size_t d_in = get_dimension(doc, "d_in");
  const std::size_t d_out = get_dimension(doc, "d_out");
  if (!doc.contains("data")) throw ParseError("channel file: missing 'data'");
  if (kind != "kraus" && kind != "choi") throw ParseError("channel file: 'kind' must be \"kraus\" or \"choi\"");
  if (d_in != d_out) throw PreconditionError("only square channels (d_in == d_out) are supported");
  const std::size_t d = d_in;

  std::optional<Channel> ch;
  if (kind == "kraus") {
    const auto& data = doc["data"];
    if (!data.is_array() || data.empty()) throw ParseError("channel file: 'data' must be a non-empty list of matrices");
    std::vector<ComplexMatrix> kraus;
    for (const auto& m : data) kraus.emplace_back(d, d, parse_flat(m, d * d, "Kraus operator"));
    ch = Channel::from_kraus(std::move(kraus), !allow_non_tp);
  } else {
    ChoiOperator choi(ComplexMatrix(d * d, d * d, parse_flat(doc["data"], d * d * d * d, "Choi matrix")), d);
    ch = Channel::from_choi(std::move(choi));
    if (!allow_non_tp && !ch->is_trace_preserving()) {
      throw PreconditionError("Choi matrix is not trace preserving (tr_S Ω != I/d)");
    }
  }
  if (auto split = subsystem_split(doc, d)) ch = ch->with_subsystems(*split);
  return *ch;
}

Channel load_channel_file(const std::string& path, bool allow_non_tp) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open channel file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_channel_json(buffer.str(), allow_non_tp);
}

std::string channel_to_json(const Channel& ch) {
  json doc;
  doc["d_in"] = ch.dim();
  doc["d_out"] = ch.dim();
  if (ch.kraus()) {
    doc["kind"] = "kraus";
    json data = json::array();
    for (const auto& k : *ch.kraus()) data.push_back(complex_vector_to_json(k.entries()));
    doc["data"] = std::move(data);
  } else {
    doc["kind"] = "choi";
    doc["data"] = complex_vector_to_json(ch.choi().matrix().entries());
  }
  if (ch.subsystems()) doc["dims"] = {ch.subsystems()->a, ch.subsystems()->b};
  return doc.dump();
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

double round_significant(double x) {
  if (!std::isfinite(x)) return x;
  const std::string s = format_number(x);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

namespace {

void dump_into(const json& j, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::number_float:
      out += std::isfinite(j.get<double>()) ? format_number(j.get<double>()) : "null";
      return;
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad;
        dump_into(j[i], indent, depth + 1, out);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close_pad + "]";
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad + json(it.key()).dump() + ": ";
        dump_into(it.value(), indent, depth + 1, out);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close_pad + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& doc, int indent) {
  std::string out;
  dump_into(doc, indent, 0, out);
  return out;
}

nlohmann::json complex_vector_to_json(std::span<const Complex> v) {
  json out = json::array();
  for (const auto& z : v) out.push_back({round_significant(z.real()), round_significant(z.imag())});
  return out;
}

nlohmann::json verdict_to_json(const Verdict& v) {
  json out;
  out["tag"] = to_string(v.tag);
  out["method"] = v.method;
  out["margin"] = v.margin ? json(round_significant(*v.margin)) : json(nullptr);
  if (v.witness) {
    const Witness& w = *v.witness;
    json wj;
    wj["kind"] = to_string(w.kind);
    wj["value"] = round_significant(w.value);
    wj["vector"] = complex_vector_to_json(w.vector);
    if (!w.input.empty()) wj["input"] = complex_vector_to_json(w.input);
    if (!w.product_a.empty()) {
      wj["product_a"] = complex_vector_to_json(w.product_a);
      wj["product_b"] = complex_vector_to_json(w.product_b);
    }
    out["witness"] = std::move(wj);
  } else {
    out["witness"] = nullptr;
  }
  out["note"] = v.note;
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

}  // namespace qchan
