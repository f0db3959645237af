#include "doctest.h"

#include "hgfrob/io.hpp"

using namespace hgf;

namespace {

std::string data(const std::string& rel) { return std::string(HGFROB_SOURCE_DIR) + "/" + rel; }

Json two_primary_doc() {
  return Json::parse(R"({
    "dimension": 2,
    "metric": [["0", "1"], ["1", "0"]],
    "potential": [{"coeff": "1/2", "mono": ["2", "1"]}, {"coeff": {"param": "c"}, "mono": ["0", "5"]}],
    "unit_index": 0,
    "euler": {"matrix": [["1", "0"], ["0", "1/2"]], "shift": ["0", "0"], "conformal_dimension": "1/2"},
    "parameters": {"c": "1"}
  })");
}

}  // namespace

TEST_CASE("point document parses to a one-dimensional model") {
  auto m = load_model(data("models/point.json"));
  CHECK(m.dimension() == 1);
  CHECK(m.conformal());
}

TEST_CASE("parameterized document matches the built-in model") {
  PrecisionScope scope(256);
  auto m = parse_model(two_primary_doc());
  auto ref = models::two_primary(Rational(1, 2));
  CHECK(m.potential() == ref.potential());
  CHECK(m.conformal());
  auto check = check_model(m);
  CHECK(check.wdvv <= numeric_context().tolerance);
  CHECK(check.unit <= numeric_context().tolerance);
  CHECK(check.euler <= numeric_context().tolerance);
}

TEST_CASE("shipped models pass their axiom checks") {
  PrecisionScope scope(256);
  for (const char* name : {"point", "two_primary_d1_3", "two_primary_d1_2", "two_primary_d1", "two_primary_d3_2",
                           "two_primary_d5_3", "a3"}) {
    CAPTURE(name);
    auto m = load_model(data(std::string("models/") + name + ".json"));
    auto check = check_model(m);
    CHECK(check.wdvv <= numeric_context().tolerance);
    CHECK(check.unit <= numeric_context().tolerance);
    CHECK(check.euler <= numeric_context().tolerance);
  }
}

TEST_CASE("round trip through the document form") {
  auto m = models::a3();
  auto back = parse_model(model_to_json(m));
  CHECK(back.potential() == m.potential());
  CHECK(model_to_json(back).dump() == model_to_json(m).dump());
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(load_model(data("tests/data/nonsymmetric.json")), ValidationError);
  auto doc = two_primary_doc();
  doc.erase("parameters");
  CHECK_THROWS_AS(parse_model(doc), ValidationError);
  doc = two_primary_doc();
  doc["metric"][0][0] = 0.5;
  CHECK_THROWS_AS(parse_model(doc), ValidationError);
  doc = two_primary_doc();
  doc["potential"][0]["mono"] = Json::array({"1"});
  CHECK_THROWS_AS(parse_model(doc), ValidationError);
  doc = two_primary_doc();
  doc["metric"] = Json::parse(R"([["1", "1"], ["1", "1"]])");
  CHECK_THROWS_AS(parse_model(doc), ValidationError);
  doc = two_primary_doc();
  doc["colour"] = "red";
  CHECK_THROWS_AS(parse_model(doc), ValidationError);
}

TEST_CASE("tau documents") {
  auto tau = load_tau(data("tests/data/tau_two_primary.json"), 2);
  REQUIRE(tau.size() == 3);
  CHECK(tau[1][1] == Complex(Rational(-1, 300)));
  auto padded = parse_tau(Json::parse(R"({"Kmax": 3, "t": [["1/2"]]})"), 1);
  CHECK(padded.size() == 4);
  CHECK(padded[3][0] == Complex(0));
  CHECK_THROWS_AS(parse_tau(Json::parse(R"({"Kmax": 0, "t": [["1"], ["2"]]})"), 1), ValidationError);
  CHECK_THROWS_AS(parse_tau(Json::parse(R"({"t": [["1", "2"]]})"), 1), ValidationError);
}

TEST_CASE("value formatting") {
  PrecisionScope scope(256);
  CHECK(json_value(Rational(1, 24)).get<std::string>() == "1/24");
  auto s = json_value(Complex(Rational(1, 3))).get<std::string>();
  CHECK(s.size() > 70);
  CHECK(s.rfind("3.333", 0) == 0);
  auto z = json_value(Complex(Real(1), Real(2)));
  CHECK(z.is_object());
  CHECK(parse_rational_list("1/2,-3,0.25") == std::vector<Rational>{Rational(1, 2), Rational(-3), Rational(1, 4)});
}

TEST_CASE("R table keys") {
  PrecisionScope scope(256);
  auto m = models::two_primary(Rational(1, 2));
  auto p = to_complex({Rational(3, 10), Rational(7, 10)});
  auto frame = canonical_frame(m, p, 2);
  auto j = rseries_to_json(compute_R(m, frame, 2));
  CHECK(j["R"].contains("2,1,0"));
  CHECK(j["R"]["0,0,0"].get<std::string>().rfind("1.000", 0) == 0);
  auto e = edges_to_json(edge_tail_data(compute_R(m, frame, 2), frame));
  CHECK(e["V"].contains("0,1,0,0"));
}
