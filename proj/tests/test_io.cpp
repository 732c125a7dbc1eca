#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <clocale>

#include "oracles.hpp"
#include "qchan/errors.hpp"
#include "qchan/io.hpp"
#include "qchan/random.hpp"

using namespace qchan;
using nlohmann::json;

namespace {

json flatten(const ComplexMatrix& m) {
  json out = json::array();
  for (const auto& z : m.entries()) out.push_back({z.real(), z.imag()});
  return out;
}

}  // namespace

TEST_CASE("Kraus and Choi files round trip") {
  Rng rng(601);
  const auto kraus = random_kraus(rng, 3, 2);
  json doc{{"kind", "kraus"}, {"d_in", 3}, {"d_out", 3}, {"data", json::array({flatten(kraus[0]), flatten(kraus[1])})}};
  const auto ch = parse_channel_json(doc.dump(), false);
  CHECK(max_abs_diff(ch.choi().matrix(), oracle::choi(kraus)) <= 1e-13);
  CHECK_FALSE(ch.subsystems());

  json cdoc{{"kind", "choi"}, {"d_in", 4}, {"d_out", 4}, {"data", flatten(oracle::isotropic(4, 0.3))}};
  const auto cch = parse_channel_json(cdoc.dump(), false);
  REQUIRE(cch.subsystems());
  CHECK(*cch.subsystems() == BipartiteDims{2, 2});
  CHECK(max_abs_diff(cch.choi().matrix(), oracle::isotropic(4, 0.3)) == 0.0);

  const auto again = parse_channel_json(channel_to_json(ch), false);
  CHECK(max_abs_diff(again.choi().matrix(), ch.choi().matrix()) <= 1e-8);

  cdoc["dims"] = {4, 1};
  CHECK(*parse_channel_json(cdoc.dump(), false).subsystems() == BipartiteDims{4, 1});
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_channel_json("{not json", false), ParseError);
  CHECK_THROWS_AS(parse_channel_json("[]", false), ParseError);
  CHECK_THROWS_AS(parse_channel_json(R"({"kind": "ptm", "d_in": 2, "d_out": 2, "data": []})", false), ParseError);
  CHECK_THROWS_AS(parse_channel_json(R"({"kind": "choi", "d_in": 2, "d_out": 2, "data": [[1, 0]]})", false),
                  ParseError);
  CHECK_THROWS_AS(parse_channel_json(R"({"kind": "kraus", "d_in": 0, "d_out": 0, "data": []})", false), ParseError);
  CHECK_THROWS_AS(parse_channel_json(R"({"kind": "kraus", "d_in": 1, "d_out": 1, "data": [[[1, "x"]]]})", false),
                  ParseError);
  CHECK_THROWS_AS(parse_channel_json(R"({"kind": "kraus", "d_in": 1, "d_out": 1, "data": [[[1, 0]]], "dims": [3]})",
                                     false),
                  ParseError);
  CHECK_THROWS_AS(load_channel_file("/nonexistent/channel.json", false), ParseError);
}

TEST_CASE("precondition failures") {
  CHECK_THROWS_AS(parse_channel_json(R"({"kind": "kraus", "d_in": 2, "d_out": 3, "data": []})", false),
                  PreconditionError);
  const std::string half = R"({"kind": "kraus", "d_in": 1, "d_out": 1, "data": [[[0.5, 0]]]})";
  CHECK_THROWS_AS(parse_channel_json(half, false), PreconditionError);
  CHECK_FALSE(parse_channel_json(half, true).is_trace_preserving());

  json cdoc{{"kind", "choi"}, {"d_in", 2}, {"d_out", 2}, {"data", flatten(ComplexMatrix::identity(4))}};
  CHECK_THROWS_AS(parse_channel_json(cdoc.dump(), false), PreconditionError);
  CHECK_NOTHROW(parse_channel_json(cdoc.dump(), true));
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(-1.0 / 72.0) == "-0.0138888889");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-12) == "1e-12");
  CHECK(format_number(123456789012.0) == "1.23456789e+11");
  CHECK(round_significant(1.0 / 3.0) == 0.333333333);
  // locale does not leak into the output
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) {
    CHECK(format_number(0.5) == "0.5");
    std::setlocale(LC_NUMERIC, "C");
  }
}

TEST_CASE("CSV quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(csv_row({"a", "", "b,c"}) == "a,,\"b,c\"\n");
}

TEST_CASE("JSON dump keeps nine digits") {
  json doc{{"x", 0.268379065}, {"y", json::array({1, 2.5, nullptr, true})}, {"s", "q\"uote"}};
  const std::string text = dump_json(doc);
  CHECK(text.find("0.268379065") != std::string::npos);
  CHECK(text.find("0.26837906500000003") == std::string::npos);
  CHECK(json::parse(text) == json::parse(doc.dump()));
  CHECK(dump_json(json::object()) == "{}");
}

TEST_CASE("verdict serialisation") {
  Verdict v;
  v.tag = VerdictTag::Refuted;
  v.method = "worst-case-input-search";
  v.margin = -0.5;
  Witness w;
  w.kind = WitnessKind::OutputPt;
  w.vector = {Complex(0.0, 1.0), Complex(1.0, 0.0)};
  w.input = {Complex(1.0, 0.0)};
  w.value = -0.5;
  v.witness = w;
  const json j = verdict_to_json(v);
  CHECK(j["tag"] == "Refuted");
  CHECK(j["method"] == "worst-case-input-search");
  CHECK(j["margin"] == -0.5);
  CHECK(j["witness"]["kind"] == "output_pt");
  CHECK(j["witness"]["vector"][0][1] == 1.0);
  CHECK(j["witness"]["input"].size() == 1);

  Verdict u;
  const json ju = verdict_to_json(u);
  CHECK(ju["tag"] == "Unknown");
  CHECK(ju["margin"].is_null());
  CHECK(ju["witness"].is_null());
}
