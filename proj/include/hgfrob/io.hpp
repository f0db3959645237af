#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hgfrob/descendent.hpp"

namespace hgf {

using Json = nlohmann::json;

// Numbers in documents are strings "p/q", decimal strings, or JSON numbers
// (integers only, to keep inputs exact).
Rational json_rational(const Json& v);

Expression parse_expression(const Json& terms, int variables);
Json expression_to_json(const Expression& e);

// {"dimension", "metric", "potential": [terms], "unit_index",
//  "euler": {"matrix", "shift", "conformal_dimension"}?, "parameters": {name: value}}
FrobeniusModel parse_model(const Json& doc);
FrobeniusModel load_model(const std::string& path);
Json model_to_json(const FrobeniusModel& model);

struct ModelCheck {
  Real wdvv = 0;
  Real unit = 0;
  Real euler = -1;  // negative when the model has no Euler data
  std::vector<Complex> sample;
};
// Pointwise axiom residuals at a fixed generic rational point.
ModelCheck check_model(const FrobeniusModel& model);

// {"Kmax", "t": [[t_0], [t_1], ...]}; missing rows up to Kmax are zero.
CurvePoint parse_tau(const Json& doc, int dimension);
CurvePoint load_tau(const std::string& path, int dimension);

// Comma-separated rationals or decimals, parsed exactly.
std::vector<Rational> parse_rational_list(const std::string& text);

Json json_value(const Rational& q);
// Decimal string at the working precision; a complex value prints as
// {"re", "im"} unless its imaginary part is below tolerance.
Json json_value(const Complex& z);
Json json_matrix(const Matrix<Complex>& m);

Json frame_to_json(const CanonicalFrame& frame);
Json rseries_to_json(const RSeries& r);
Json edges_to_json(const EdgeTailData& data);

Json read_json_file(const std::string& path);

}  // namespace hgf
