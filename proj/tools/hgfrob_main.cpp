#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hgfrob/acceptance.hpp"
#include "hgfrob/hodge.hpp"
#include "hgfrob/intersection.hpp"
#include "hgfrob/io.hpp"

using namespace hgf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

struct Options {
  int precision = 256;
  std::string tolerance;
  std::string format = "auto";
  std::string model;
  std::string point;
  std::string tau;
  std::string base;
  std::string perm;
  std::string flip;
  std::string anchors;
  std::string gauge;
  std::string indices;
  std::string only;
  std::string h;
  int g = 2;
  int K = -1;
  int n = -1;
  int count = 2;
  int genus_cap = 2;
  int degree = 4;
};

int env_precision() {
  const char* v = std::getenv("HGFROB_PRECISION");
  if (v == nullptr || *v == '\0') return 256;
  try {
    int bits = std::stoi(v);
    if (bits >= 64) return bits;
  } catch (const std::exception&) {
  }
  std::cerr << "warning: ignoring HGFROB_PRECISION='" << v << "'\n";
  return 256;
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& q : parse_rational_list(text)) {
    if (denominator(q) != 1) throw ValidationError("expected integers in '" + text + "'");
    out.push_back(static_cast<int>(numerator(q)));
  }
  return out;
}

std::vector<Complex> complex_list(const std::string& text) { return to_complex(parse_rational_list(text)); }

std::vector<Complex> require_point(const Options& o, const FrobeniusModel& m) {
  if (o.point.empty()) throw ValidationError("--point is required");
  auto p = complex_list(o.point);
  if (static_cast<int>(p.size()) != m.dimension()) throw ValidationError("--point must have the model dimension");
  return p;
}

FrobeniusModel require_model(const Options& o) {
  if (o.model.empty()) throw ValidationError("--model is required");
  auto m = load_model(o.model);
  auto check = check_model(m);
  const Real& tol = numeric_context().tolerance;
  if (check.unit > tol) std::cerr << "warning: unit axiom residual " << to_string(check.unit, 6) << " at the sample point\n";
  return m;
}

GenusOptions genus_options(const Options& o, int n) {
  GenusOptions opt;
  if (!o.perm.empty()) {
    opt.frame.permutation = int_list(o.perm);
    if (static_cast<int>(opt.frame.permutation.size()) != n) throw ValidationError("--perm must list every canonical index");
  }
  if (!o.flip.empty()) {
    opt.frame.flip.assign(static_cast<std::size_t>(n), false);
    for (int i : int_list(o.flip)) {
      if (i < 0 || i >= n) throw ValidationError("--flip index out of range");
      opt.frame.flip[static_cast<std::size_t>(i)] = true;
    }
  }
  if (!o.anchors.empty()) {
    opt.frame.anchors = complex_list(o.anchors);
    if (static_cast<int>(opt.frame.anchors.size()) != n) throw ValidationError("--anchors must list one value per canonical index");
  }
  if (!o.gauge.empty()) {
    // "a11,a12;a21,a22": the k-th group multiplies z^{2k-1}
    opt.r.mode = RMode::constants;
    std::stringstream ss(o.gauge);
    std::string group;
    while (std::getline(ss, group, ';')) {
      auto row = complex_list(group);
      if (static_cast<int>(row.size()) != n) throw ValidationError("--gauge groups must have one value per canonical index");
      opt.r.a.push_back(row);
    }
  }
  return opt;
}

int truncation(const Options& o, int needed) {
  if (o.K < 0) return needed;
  if (o.K < needed) {
    std::cerr << "warning: raising K from " << o.K << " to " << needed << "\n";
    return needed;
  }
  return o.K;
}

Json residuals_json(const FrameResiduals& r) {
  return {{"metric", to_string(r.metric, 6)},
          {"orthonormal", to_string(r.orthonormal, 6)},
          {"idempotent", to_string(r.idempotent, 6)},
          {"unit", to_string(r.unit, 6)},
          {"w_diagonal", to_string(r.w_diagonal, 6)}};
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

Real relative(const Complex& a, const Complex& b) {
  Real scale = std::max({Real(1), abs(a), abs(b)});
  return abs(a - b) / scale;
}

int cmd_validate(const Options& o) {
  auto m = require_model(o);
  auto check = check_model(m);
  const Real& tol = numeric_context().tolerance;
  Json doc = model_to_json(m);
  Json r = {{"wdvv", to_string(check.wdvv, 6)}, {"unit", to_string(check.unit, 6)}};
  if (check.euler >= 0) r["euler"] = to_string(check.euler, 6);
  Json sample = Json::array();
  for (const auto& x : check.sample) sample.push_back(json_value(x));
  doc["check"] = {{"sample_point", sample}, {"residuals", r}};
  bool ok = check.wdvv <= tol && (check.euler < 0 || check.euler <= tol);
  doc["valid"] = ok;
  emit(doc);
  return ok ? kExitOk : kExitValidation;
}

int cmd_frame(const Options& o) {
  auto m = require_model(o);
  auto p = require_point(o, m);
  auto frame = canonical_frame(m, p, 0, genus_options(o, m.dimension()).frame);
  Json doc = frame_to_json(frame);
  doc["residuals"] = residuals_json(frame_residuals(m, frame));
  emit(doc);
  return kExitOk;
}

int cmd_rmatrix(const Options& o) {
  auto m = require_model(o);
  auto p = require_point(o, m);
  int K = truncation(o, 1);
  auto opt = genus_options(o, m.dimension());
  auto frame = canonical_frame(m, p, K, opt.frame);
  auto r = compute_R(m, frame, K, opt.r);
  emit(rseries_to_json(r));
  return kExitOk;
}

int cmd_edges(const Options& o) {
  auto m = require_model(o);
  auto p = require_point(o, m);
  int K = truncation(o, 1);
  emit(edges_to_json(point_data(m, p, K, genus_options(o, m.dimension()))));
  return kExitOk;
}

int cmd_genus(const Options& o) {
  if (o.g < 2) throw ValidationError("genus needs --g >= 2; use genus1-diff for g = 1");
  auto m = require_model(o);
  auto p = require_point(o, m);
  truncation(o, 3 * o.g - 2);
  auto opt = genus_options(o, m.dimension());
  auto res = genus_potential(m, p, o.g, opt);
  auto data = point_data(m, p, 3 * o.g - 2, opt);
  Complex oracle = wick_oracle(o.g, graph_input(data));
  Real residual = relative(res.value, oracle);

  Json graphs = Json::array();
  for (std::size_t k = 0; k < res.graphs.size(); ++k)
    graphs.push_back({{"graph", res.graphs[k].describe()}, {"aut", res.graphs[k].aut}, {"value", json_value(res.per_graph[k])}});
  Json doc;
  doc["precision_bits"] = numeric_context().precision_bits;
  doc["g"] = o.g;
  doc["F_g"] = json_value(res.value);
  doc["graphs"] = graphs;
  doc["oracle"] = json_value(oracle);
  doc["residual"] = to_string(residual, 6);
  doc["unitarity_residual"] = to_string(res.unitarity, 6);
  doc["consistency_residual"] = to_string(res.consistency, 6);
  emit(doc);
  return residual <= numeric_context().tolerance ? kExitOk : kExitNumerical;
}

int cmd_genus1(const Options& o) {
  auto m = require_model(o);
  auto p = require_point(o, m);
  auto opt = genus_options(o, m.dimension());
  auto frame = canonical_frame(m, p, 1, opt.frame);
  auto r = compute_R(m, frame, 1, opt.r);
  Real h = o.h.empty() ? Real("1e-6") : to_real(parse_rational(o.h));
  Json comps = Json::array();
  for (const auto& x : genus1_differential(frame, r)) comps.push_back(json_value(x));
  Json doc;
  doc["precision_bits"] = numeric_context().precision_bits;
  doc["dF1"] = comps;
  doc["fd_curl"] = to_string(genus1_fd_curl(m, p, h, opt), 6);
  emit(doc);
  return kExitOk;
}

int cmd_descendent(const Options& o) {
  if (o.g < 0) throw ValidationError("--g must be non-negative");
  auto m = require_model(o);
  if (o.tau.empty()) throw ValidationError("--tau is required");
  auto tau = load_tau(o.tau, m.dimension());
  int kmax = static_cast<int>(tau.size()) - 1;
  std::vector<Rational> base(static_cast<std::size_t>(m.dimension()), Rational(0));
  if (!o.base.empty()) {
    base = parse_rational_list(o.base);
    if (static_cast<int>(base.size()) != m.dimension()) throw ValidationError("--base must have the model dimension");
  }
  int calK = std::max(kmax, 2 * std::max(kmax, 1) + 1);
  auto cal = compute_calibration(m, base, calK);
  auto opt = genus_options(o, m.dimension());
  auto cp = critical_point(m, cal, tau);

  Json doc;
  doc["precision_bits"] = numeric_context().precision_bits;
  doc["g"] = o.g;
  doc["Kmax"] = kmax;
  Json ts = Json::array();
  for (const auto& x : cp.t) ts.push_back(json_value(x));
  doc["critical_point"] = ts;
  doc["newton_iterations"] = cp.iterations;
  int code = kExitOk;
  if (o.g == 0) {
    auto g0 = genus0_descendents(m, cal, tau);
    doc["value"] = json_value(g0.F0);
    Json first = Json::object();
    for (std::size_t k = 0; k < g0.first.size(); ++k)
      for (std::size_t a = 0; a < g0.first[k].size(); ++a) first[std::to_string(k) + "," + std::to_string(a)] = json_value(g0.first[k][a]);
    doc["first_derivatives"] = first;
  } else if (o.g == 1) {
    Real h = o.h.empty() ? Real("1e-20") : to_real(parse_rational(o.h));
    auto a = genus1_descendent_bold(m, cal, tau, h, opt);
    auto b = genus1_descendent_det(m, cal, tau, h, opt);
    Json ja = Json::object(), jb = Json::object();
    Real worst = 0;
    const int n = m.dimension();
    for (std::size_t c = 0; c < a.size(); ++c) {
      std::string key = std::to_string(static_cast<int>(c) / n) + "," + std::to_string(static_cast<int>(c) % n);
      ja[key] = json_value(a[c]);
      jb[key] = json_value(b[c]);
      worst = std::max(worst, relative(a[c], b[c]));
    }
    doc["dF1_bold"] = ja;
    doc["dF1_det"] = jb;
    doc["residual"] = to_string(worst, 6);
  } else {
    truncation(o, 3 * o.g - 2);
    auto res = descendent_potential(m, cal, tau, o.g, opt);
    doc["value"] = json_value(res.value);
    doc["criticality_residual"] = to_string(res.frame.criticality_residual, 6);
    Json D = Json::array();
    for (const auto& x : res.frame.D) D.push_back(json_value(x));
    doc["D"] = D;
    Json T = Json::object();
    for (std::size_t i = 0; i < res.frame.T.size(); ++i)
      for (std::size_t k = 0; k < res.frame.T[i].size(); ++k) T[std::to_string(i) + "," + std::to_string(k)] = json_value(res.frame.T[i][k]);
    doc["T"] = T;
  }
  emit(doc);
  return code;
}

int cmd_wk(const Options& o, bool json) {
  if (o.g < 0) throw ValidationError("--g must be non-negative");
  if (!o.indices.empty()) {
    auto ks = int_list(o.indices);
    for (int k : ks)
      if (k < 0) throw ValidationError("psi exponents must be non-negative");
    Rational v = psi_intersection(o.g, ks);
    if (json) {
      emit({{"g", o.g}, {"indices", ks}, {"value", to_string(v)}});
    } else {
      std::cout << to_string(v) << "\n";
    }
    return kExitOk;
  }
  if (o.n < 1) throw ValidationError("wk needs --indices or --n");
  // every nondecreasing k_1 <= ... <= k_n with sum 3g - 3 + n
  const int total = 3 * o.g - 3 + o.n;
  Json table = Json::object();
  if (total >= 0) {
    std::vector<int> ks(static_cast<std::size_t>(o.n), 0);
    std::function<void(int, int, int)> fill = [&](int pos, int lo, int left) {
      if (pos == o.n - 1) {
        if (left < lo) return;
        ks[static_cast<std::size_t>(pos)] = left;
        Rational v = psi_intersection(o.g, ks);
        std::string key;
        for (int k : ks) key += (key.empty() ? "" : ",") + std::to_string(k);
        table[key] = to_string(v);
        return;
      }
      for (int k = lo; k * (o.n - pos) <= left; ++k) {
        ks[static_cast<std::size_t>(pos)] = k;
        fill(pos + 1, k, left - k);
      }
    };
    fill(0, 0, total);
  }
  emit({{"g", o.g}, {"n", o.n}, {"table", table}});
  return kExitOk;
}

int cmd_hodge(const Options& o) {
  if (o.count < 1 || o.genus_cap < 0 || o.degree < 0) throw ValidationError("hodge-lemma needs --count >= 1 and non-negative caps");
  auto rep = hodge_lemma_check(o.count, o.genus_cap, o.degree);
  emit({{"count", o.count},
        {"genus", o.genus_cap},
        {"degree", o.degree},
        {"compared", rep.compared},
        {"mismatches", rep.mismatches},
        {"s1_q0", to_string(rep.s1_q0)}});
  return rep.mismatches == 0 ? kExitOk : kExitNumerical;
}

int cmd_selftest(const Options& o) {
  std::vector<int> only;
  if (!o.only.empty()) only = int_list(o.only);
  auto results = run_acceptance(std::cout, only);
  for (const auto& r : results)
    if (!r.passed) return kExitNumerical;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-genus and descendent potentials of semisimple Frobenius manifolds"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  o.precision = env_precision();
  app.add_option("--precision", o.precision, "working precision in bits (default: HGFROB_PRECISION or 256)")->check(CLI::Range(64, 1 << 16));
  app.add_option("--tolerance", o.tolerance, "comparison tolerance (default scales with precision)");
  app.add_option("--format", o.format, "auto | json | text")->check(CLI::IsMember({"auto", "json", "text"}));

  auto model_opts = [&](CLI::App* sub, bool point) {
    sub->add_option("--model", o.model, "model JSON document")->required();
    if (point) {
      sub->add_option("--point", o.point, "flat coordinates, comma separated")->required();
      sub->add_option("--perm", o.perm, "canonical index permutation");
      sub->add_option("--flip", o.flip, "canonical indices whose sqrt(Delta) branch is flipped");
      sub->add_option("--anchors", o.anchors, "u values at the point for models without Euler data");
      sub->add_option("--gauge", o.gauge, "odd-order diagonal constants, groups separated by ';'");
    }
  };

  auto* validate = app.add_subcommand("validate", "parse a model and check the axioms at a sample point");
  model_opts(validate, false);
  auto* frame = app.add_subcommand("frame", "canonical coordinates, Delta and Psi at a point");
  model_opts(frame, true);
  auto* rmatrix = app.add_subcommand("rmatrix", "R_1..R_K at a point");
  model_opts(rmatrix, true);
  rmatrix->add_option("--K", o.K, "truncation order");
  auto* edges = app.add_subcommand("edges", "edge coefficients V and tail values T at a point");
  model_opts(edges, true);
  edges->add_option("--K", o.K, "truncation order");
  auto* genus = app.add_subcommand("genus", "F^g by graph sum, with the Wick oracle");
  model_opts(genus, true);
  genus->add_option("--g", o.g, "genus (>= 2)");
  genus->add_option("--K", o.K, "truncation order (raised to 3g-2)");
  auto* genus1 = app.add_subcommand("genus1-diff", "components of dF^1 and the difference-quotient curl");
  model_opts(genus1, true);
  genus1->add_option("--step", o.h, "difference step");
  auto* desc = app.add_subcommand("descendent", "descendent potential at a curve point");
  desc->add_option("--model", o.model, "model JSON document")->required();
  desc->add_option("--tau", o.tau, "curve point JSON document")->required();
  desc->add_option("--g", o.g, "genus");
  desc->add_option("--base", o.base, "calibration base point");
  desc->add_option("--K", o.K, "R truncation (raised to 3g-2)");
  desc->add_option("--step", o.h, "difference step for g = 1");
  desc->add_option("--perm", o.perm, "canonical index permutation");
  desc->add_option("--flip", o.flip, "canonical indices whose sqrt branch is flipped");
  auto* wk = app.add_subcommand("wk", "psi-class intersection numbers");
  wk->add_option("--g", o.g, "genus")->required();
  wk->add_option("--indices", o.indices, "psi exponents, comma separated");
  wk->add_option("--n", o.n, "dump every correlator with n insertions");
  auto* hodge = app.add_subcommand("hodge-lemma", "exact check of the Hodge flow identity");
  hodge->add_option("--count", o.count, "number of s parameters");
  hodge->add_option("--genus", o.genus_cap, "genus cap");
  hodge->add_option("--degree", o.degree, "Q-degree cap");
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--only", o.only, "criterion numbers, comma separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    std::optional<PrecisionScope> scope;
    if (o.tolerance.empty()) {
      scope.emplace(o.precision);
    } else {
      scope.emplace(o.precision, to_real(parse_rational(o.tolerance)));
      if (numeric_context().tolerance <= 0) throw ValidationError("--tolerance must be positive");
    }
    if (*validate) return cmd_validate(o);
    if (*frame) return cmd_frame(o);
    if (*rmatrix) return cmd_rmatrix(o);
    if (*edges) return cmd_edges(o);
    if (*genus) return cmd_genus(o);
    if (*genus1) return cmd_genus1(o);
    if (*desc) return cmd_descendent(o);
    if (*wk) return cmd_wk(o, o.format == "json");
    if (*hodge) return cmd_hodge(o);
    if (*selftest) return cmd_selftest(o);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
