#include "hgfrob/io.hpp"

#include <fstream>
#include <sstream>

namespace hgf {

Rational json_rational(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) throw ValidationError("floating-point JSON numbers are not exact; quote them as strings");
  throw ValidationError("expected a number, got " + v.dump());
}

Expression parse_expression(const Json& terms, int variables) {
  const Json& list = terms.is_object() && terms.contains("terms") ? terms.at("terms") : terms;
  if (!list.is_array()) throw ValidationError("expression must be a list of terms");
  std::vector<ExprTerm> out;
  for (const auto& t : list) {
    if (!t.is_object()) throw ValidationError("expression term must be an object");
    ExprTerm term{Rational(1), {}, std::vector<Rational>(static_cast<std::size_t>(variables)),
                  std::vector<Rational>(static_cast<std::size_t>(variables))};
    if (!t.contains("coeff")) throw ValidationError("expression term without coeff");
    const auto& c = t.at("coeff");
    if (c.is_object()) {
      if (!c.contains("param") || !c.at("param").is_string()) throw ValidationError("coefficient object needs a param name");
      term.params[c.at("param").get<std::string>()] = 1;
    } else {
      term.coeff = json_rational(c);
    }
    for (const char* key : {"mono", "exp"}) {
      if (!t.contains(key)) continue;
      const auto& arr = t.at(key);
      if (!arr.is_array() || static_cast<int>(arr.size()) != variables)
        throw ValidationError(std::string(key) + " must list one entry per flat coordinate");
      auto& dst = std::string(key) == "mono" ? term.mono : term.rate;
      for (int a = 0; a < variables; ++a) dst[static_cast<std::size_t>(a)] = json_rational(arr[static_cast<std::size_t>(a)]);
    }
    for (const auto& [name, value] : t.items())
      if (name != "coeff" && name != "mono" && name != "exp") throw ValidationError("unknown term field '" + name + "'");
    out.push_back(std::move(term));
  }
  return Expression::from_terms(variables, std::move(out));
}

Json expression_to_json(const Expression& e) {
  Json out = Json::array();
  for (const auto& t : e.terms()) {
    Json term;
    if (t.params.empty()) {
      term["coeff"] = to_string(t.coeff);
    } else if (t.params.size() == 1 && t.params.begin()->second == 1 && t.coeff == 1) {
      term["coeff"] = {{"param", t.params.begin()->first}};
    } else {
      throw ValidationError("expression term with a compound parameter coefficient has no document form");
    }
    Json mono = Json::array(), rate = Json::array();
    for (const auto& x : t.mono) mono.push_back(to_string(x));
    for (const auto& x : t.rate) rate.push_back(to_string(x));
    term["mono"] = mono;
    term["exp"] = rate;
    out.push_back(term);
  }
  return out;
}

namespace {

Matrix<Rational> rational_matrix(const Json& m, int n, const char* what) {
  if (!m.is_array() || static_cast<int>(m.size()) != n) throw ValidationError(std::string(what) + " must be a square array of the model dimension");
  Matrix<Rational> out(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    const auto& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw ValidationError(std::string(what) + " row has the wrong length");
    for (int j = 0; j < n; ++j) out(i, j) = json_rational(row[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace

FrobeniusModel parse_model(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("model document must be an object");
  for (const char* key : {"dimension", "metric", "potential"})
    if (!doc.contains(key)) throw ValidationError(std::string("model document lacks '") + key + "'");
  for (const auto& [name, value] : doc.items())
    if (name != "dimension" && name != "metric" && name != "potential" && name != "unit_index" && name != "euler" &&
        name != "parameters" && name != "name")
      throw ValidationError("unknown model field '" + name + "'");
  if (!doc.at("dimension").is_number_integer()) throw ValidationError("dimension must be an integer");
  const int n = doc.at("dimension").get<int>();
  if (n < 1) throw ValidationError("dimension must be positive");
  auto metric = rational_matrix(doc.at("metric"), n, "metric");
  Expression potential = parse_expression(doc.at("potential"), n);
  if (doc.contains("parameters")) {
    std::map<std::string, Rational> values;
    for (const auto& [name, value] : doc.at("parameters").items()) values[name] = json_rational(value);
    potential = potential.bind(values);
  }
  int unit = doc.value("unit_index", 0);
  std::optional<EulerData> euler;
  if (doc.contains("euler") && !doc.at("euler").is_null()) {
    const auto& e = doc.at("euler");
    EulerData data;
    data.matrix = rational_matrix(e.at("matrix"), n, "euler.matrix");
    const auto& shift = e.at("shift");
    if (!shift.is_array() || static_cast<int>(shift.size()) != n) throw ValidationError("euler.shift must have the model dimension");
    for (const auto& x : shift) data.shift.push_back(json_rational(x));
    data.conformal_dimension = json_rational(e.at("conformal_dimension"));
    euler = data;
  }
  return FrobeniusModel(metric, potential, unit, euler, doc.value("name", std::string()));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

FrobeniusModel load_model(const std::string& path) { return parse_model(read_json_file(path)); }

Json model_to_json(const FrobeniusModel& model) {
  const int n = model.dimension();
  Json doc;
  doc["dimension"] = n;
  Json g = Json::array();
  for (int i = 0; i < n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < n; ++j) row.push_back(to_string(model.metric()(i, j)));
    g.push_back(row);
  }
  doc["metric"] = g;
  doc["potential"] = expression_to_json(model.potential());
  doc["unit_index"] = model.unit_index();
  if (model.euler()) {
    const auto& e = *model.euler();
    Json m = Json::array(), s = Json::array();
    for (int i = 0; i < n; ++i) {
      Json row = Json::array();
      for (int j = 0; j < n; ++j) row.push_back(to_string(e.matrix(i, j)));
      m.push_back(row);
      s.push_back(to_string(e.shift[static_cast<std::size_t>(i)]));
    }
    doc["euler"] = {{"matrix", m}, {"shift", s}, {"conformal_dimension", to_string(e.conformal_dimension)}};
  }
  if (!model.name().empty()) doc["name"] = model.name();
  return doc;
}

ModelCheck check_model(const FrobeniusModel& model) {
  ModelCheck out;
  for (int a = 0; a < model.dimension(); ++a) out.sample.emplace_back(Rational(2 * a + 3, 7 + 2 * a));
  out.wdvv = check_wdvv(model, out.sample);
  out.unit = unit_residual(model, out.sample);
  if (model.conformal()) out.euler = euler_residual(model, out.sample);
  return out;
}

CurvePoint parse_tau(const Json& doc, int dimension) {
  if (!doc.is_object() || !doc.contains("t")) throw ValidationError("tau document needs a 't' array");
  const auto& rows = doc.at("t");
  if (!rows.is_array() || rows.empty()) throw ValidationError("'t' must be a nonempty array");
  int kmax = doc.value("Kmax", static_cast<int>(rows.size()) - 1);
  if (kmax < 0 || kmax + 1 < static_cast<int>(rows.size())) throw ValidationError("Kmax is smaller than the number of rows");
  CurvePoint tau(static_cast<std::size_t>(kmax + 1), std::vector<Complex>(static_cast<std::size_t>(dimension)));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& row = rows[k];
    if (!row.is_array() || static_cast<int>(row.size()) != dimension) throw ValidationError("each t_k must have the model dimension");
    for (int a = 0; a < dimension; ++a) tau[k][static_cast<std::size_t>(a)] = Complex(json_rational(row[static_cast<std::size_t>(a)]));
  }
  return tau;
}

CurvePoint load_tau(const std::string& path, int dimension) { return parse_tau(read_json_file(path), dimension); }

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

Json json_value(const Rational& q) { return to_string(q); }

Json json_value(const Complex& z) {
  Real scale = std::max(Real(1), abs(z));
  if (abs(z.imag()) <= numeric_context().tolerance * scale) return to_string(z.real());
  return {{"re", to_string(z.real())}, {"im", to_string(z.imag())}};
}

Json json_matrix(const Matrix<Complex>& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(json_value(m(i, j)));
    out.push_back(row);
  }
  return out;
}

namespace {

Json json_vector(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(json_value(x));
  return out;
}

}  // namespace

Json frame_to_json(const CanonicalFrame& frame) {
  Json out;
  out["precision_bits"] = numeric_context().precision_bits;
  out["point"] = json_vector(frame.point);
  out["u"] = json_vector(frame.u);
  out["delta"] = json_vector(frame.delta);
  out["sqrt_delta"] = json_vector(frame.sqrt_delta);
  out["psi"] = json_matrix(frame.psi);
  Json du = Json::array();
  for (int a = 0; a < static_cast<int>(frame.point.size()); ++a) {
    Json row = Json::array();
    for (int i = 0; i < frame.dimension(); ++i) row.push_back(json_value(frame.du(a, i)));
    du.push_back(row);
  }
  out["du"] = du;
  return out;
}

Json rseries_to_json(const RSeries& r) {
  Json out;
  out["precision_bits"] = numeric_context().precision_bits;
  out["K"] = r.K;
  Json table = Json::object();
  for (int k = 0; k <= r.K; ++k) {
    const auto& m = r.R[static_cast<std::size_t>(k)];
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) table[std::to_string(k) + "," + std::to_string(i) + "," + std::to_string(j)] = json_value(m(i, j));
  }
  out["R"] = table;
  out["unitarity_residual"] = to_string(unitarity_residual(r), 6);
  out["consistency_residual"] = to_string(r.consistency_residual, 6);
  return out;
}

Json edges_to_json(const EdgeTailData& data) {
  Json out;
  out["precision_bits"] = numeric_context().precision_bits;
  out["K"] = data.K;
  Json v = Json::object();
  for (const auto& [key, value] : data.V)
    v[std::to_string(key[0]) + "," + std::to_string(key[1]) + "," + std::to_string(key[2]) + "," + std::to_string(key[3])] = json_value(value);
  out["V"] = v;
  Json t = Json::object();
  for (int i = 0; i < data.N; ++i)
    for (std::size_t k = 0; k < data.T[static_cast<std::size_t>(i)].size(); ++k)
      t[std::to_string(i) + "," + std::to_string(k)] = json_value(data.T[static_cast<std::size_t>(i)][k]);
  out["T"] = t;
  out["delta"] = json_vector(data.delta);
  out["sqrt_delta"] = json_vector(data.sqrt_delta);
  out["t_residual"] = to_string(data.t_residual, 6);
  return out;
}

}  // namespace hgf
