#include "hgfrob/genus.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "hgfrob/intersection.hpp"

namespace hgf {

namespace {

template <class F>
F integer_power(const F& x, int p) {
  F r(1);
  if (p >= 0) {
    for (int i = 0; i < p; ++i) r = r * x;
  } else {
    for (int i = 0; i < -p; ++i) r = r / x;
  }
  return r;
}

}  // namespace

GraphInput<Rational> synthetic_graph_input(int n, int g, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  auto rnd = [&] { return Rational(num(gen), den(gen)); };
  GraphInput<Rational> in;
  in.N = n;
  for (int i = 0; i < n; ++i) {
    Rational d = 0;
    while (d == 0) d = rnd();
    in.delta.push_back(d);
    std::vector<Rational> t(static_cast<std::size_t>(3 * g), Rational(0));
    for (int k = 2; k < 3 * g; ++k) t[static_cast<std::size_t>(k)] = rnd();
    in.tail.push_back(t);
  }
  auto table = std::make_shared<std::map<std::array<int, 4>, Rational>>();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k <= 3 * g - 4; ++k)
        for (int l = 0; k + l <= 3 * g - 4; ++l) {
          std::array<int, 4> key{i, j, k, l}, mirror{j, i, l, k};
          auto it = table->find(mirror);
          (*table)[key] = it != table->end() ? it->second : rnd();
        }
  in.weight = [table](int i, int j, int k, int l) { return table->at({i, j, k, l}); };
  return in;
}

GraphInput<Complex> to_complex_input(const GraphInput<Rational>& in) {
  GraphInput<Complex> out;
  out.N = in.N;
  for (const auto& d : in.delta) out.delta.emplace_back(d);
  for (const auto& row : in.tail) {
    std::vector<Complex> r;
    for (const auto& x : row) r.emplace_back(x);
    out.tail.push_back(std::move(r));
  }
  auto w = in.weight;
  out.weight = [w](int i, int j, int k, int l) { return Complex(w(i, j, k, l)); };
  return out;
}

GraphInput<Complex> graph_input(const EdgeTailData& data) {
  GraphInput<Complex> in;
  in.N = data.N;
  in.delta = data.delta;
  in.tail = data.T;
  // Copy so the input outlives the data it came from.
  auto shared = std::make_shared<EdgeTailData>(data);
  in.weight = [shared](int i, int j, int k, int l) { return shared->w(i, j, k, l); };
  return in;
}

template <class F>
F evaluate_graph(const StableGraph& graph, const GraphInput<F>& input) {
  const int nv = graph.vertices();
  const int ne = static_cast<int>(graph.edges.size());
  std::vector<int> budget(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) budget[static_cast<std::size_t>(v)] = 3 * graph.genus[static_cast<std::size_t>(v)] - 3 + graph.valence(v);

  std::map<std::tuple<int, int, std::vector<int>>, F> corr_cache;
  auto corr = [&](int v, int label, std::vector<int> ks) {
    std::sort(ks.begin(), ks.end());
    int gv = graph.genus[static_cast<std::size_t>(v)];
    auto key = std::make_tuple(gv, label, ks);
    auto it = corr_cache.find(key);
    if (it != corr_cache.end()) return it->second;
    F value = vertex_correlator(gv, ks, input.tail[static_cast<std::size_t>(label)]) *
              integer_power(input.delta[static_cast<std::size_t>(label)], gv - 1);
    corr_cache.emplace(key, value);
    return value;
  };

  F total(0);
  std::vector<int> label(static_cast<std::size_t>(nv), 0);
  std::vector<std::vector<int>> ks(static_cast<std::size_t>(nv));
  std::vector<int> left = budget;

  std::function<void(int, F)> assign = [&](int e, F weight) {
    if (e == ne) {
      F prod = weight;
      for (int v = 0; v < nv && !ScalarTraits<F>::is_zero(prod); ++v) prod = prod * corr(v, label[static_cast<std::size_t>(v)], ks[static_cast<std::size_t>(v)]);
      total = total + prod;
      return;
    }
    auto [a, b] = graph.edges[static_cast<std::size_t>(e)];
    const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    for (int k = 0; k <= left[ua]; ++k) {
      left[ua] -= k;
      for (int l = 0; l <= left[ub]; ++l) {
        left[ub] -= l;
        F w = input.weight(label[ua], label[ub], k, l);
        if (!ScalarTraits<F>::is_zero(w)) {
          ks[ua].push_back(k);
          ks[ub].push_back(l);
          assign(e + 1, weight * w);
          ks[ub].pop_back();
          ks[ua].pop_back();
        }
        left[ub] += l;
      }
      left[ua] += k;
    }
  };

  std::function<void(int)> labels = [&](int v) {
    if (v == nv) {
      assign(0, F(1));
      return;
    }
    for (int i = 0; i < input.N; ++i) {
      label[static_cast<std::size_t>(v)] = i;
      labels(v + 1);
    }
  };
  labels(0);
  return total / F(static_cast<int>(graph.aut));
}

template <class F>
F graph_sum(int g, const GraphInput<F>& input, std::vector<F>* per_graph) {
  F total(0);
  if (per_graph) per_graph->clear();
  for (const auto& graph : enumerate_graphs(g)) {
    F v = evaluate_graph(graph, input);
    if (per_graph) per_graph->push_back(v);
    total = total + v;
  }
  return total;
}

template <class F>
F wick_oracle(int g, const GraphInput<F>& input) {
  if (g < 2) throw ValidationError("the Wick oracle needs genus >= 2");
  const int n = input.N;
  const int kmax = 3 * g - 4;  // a half-edge power never exceeds this
  const int wcap = 6 * g - 6;  // sum over y of (2k + 1)
  const int ecap = 2 * g - 2;
  std::vector<std::string> names{"eps"};
  std::vector<int> caps{ecap};
  std::vector<int> weights{0};
  std::vector<std::pair<int, int>> var;  // (i, k) per y variable
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= kmax; ++k) {
      names.push_back("y" + std::to_string(i) + "_" + std::to_string(k));
      caps.push_back(wcap / (2 * k + 1));
      weights.push_back(2 * k + 1);
      var.emplace_back(i, k);
    }
  auto space = SeriesSpace::make(names, caps, {WeightedCap{weights, wcap}});
  const std::size_t nvars = names.size();

  // f = sum_i sum_h sum_c eps^{2h-2+|c|} Delta_i^{h-1} <<tau_c>>_h(T^i) y^c / c!
  TruncatedSeries<F> f(space);
  for (int i = 0; i < n; ++i) {
    for (int h = 0; h <= g; ++h) {
      std::vector<int> c;
      std::function<void(int, int, F)> rec = [&](int kmin, int wleft, F inv_fact) {
        int expo = 2 * h - 2 + static_cast<int>(c.size());
        if (expo >= 1 && expo <= ecap) {
          F corr = vertex_correlator(h, c, input.tail[static_cast<std::size_t>(i)]);
          if (!ScalarTraits<F>::is_zero(corr)) {
            Exponents e(nvars, 0);
            e[0] = static_cast<std::uint8_t>(expo);
            for (int k : c) ++e[static_cast<std::size_t>(1 + i * (kmax + 1) + k)];
            f.add_term(e, corr * inv_fact * integer_power(input.delta[static_cast<std::size_t>(i)], h - 1));
          }
        }
        if (expo >= ecap) return;
        for (int k = kmin; k <= kmax && 2 * k + 1 <= wleft; ++k) {
          // multiplicity of k so far, for the 1/c! factor
          int mult = static_cast<int>(std::count(c.begin(), c.end(), k)) + 1;
          c.push_back(k);
          rec(k, wleft - (2 * k + 1), inv_fact / F(mult));
          c.pop_back();
        }
      };
      rec(0, wcap, F(1));
    }
  }
  TruncatedSeries<F> z = f.exp();

  // Gaussian contraction of each y monomial: sum over perfect pairings.
  std::map<Exponents, F> memo;
  std::function<F(Exponents&)> pairings = [&](Exponents& e) -> F {
    std::size_t first = 0;
    while (first < e.size() && e[first] == 0) ++first;
    if (first == e.size()) return F(1);
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    F total(0);
    const auto [i, k] = var[first];
    --e[first];
    for (std::size_t u = first; u < e.size(); ++u) {
      if (e[u] == 0) continue;
      F count(static_cast<int>(e[u]));
      const auto [j, l] = var[u];
      F w = input.weight(i, j, k, l);
      --e[u];
      if (!ScalarTraits<F>::is_zero(w)) total = total + count * w * pairings(e);
      ++e[u];
    }
    ++e[first];
    memo.emplace(e, total);
    return total;
  };

  auto espace = SeriesSpace::make({"eps"}, {ecap});
  TruncatedSeries<F> zeps(espace);
  for (const auto& [e, c] : z.terms()) {
    int ydeg = 0;
    for (std::size_t v = 1; v < nvars; ++v) ydeg += e[v];
    if (ydeg % 2) continue;
    Exponents y(e.begin() + 1, e.end());
    F p = pairings(y);
    if (!ScalarTraits<F>::is_zero(p)) zeps.add_term({e[0]}, c * p);
  }
  return zeps.log().coefficient({static_cast<std::uint8_t>(ecap)});
}

template Rational evaluate_graph<Rational>(const StableGraph&, const GraphInput<Rational>&);
template Complex evaluate_graph<Complex>(const StableGraph&, const GraphInput<Complex>&);
template Rational graph_sum<Rational>(int, const GraphInput<Rational>&, std::vector<Rational>*);
template Complex graph_sum<Complex>(int, const GraphInput<Complex>&, std::vector<Complex>*);
template Rational wick_oracle<Rational>(int, const GraphInput<Rational>&);
template Complex wick_oracle<Complex>(int, const GraphInput<Complex>&);

EdgeTailData point_data(const FrobeniusModel& model, const std::vector<Complex>& point, int K, const GenusOptions& options) {
  auto frame = canonical_frame(model, point, K, options.frame);
  auto r = compute_R(model, frame, K, options.r);
  return edge_tail_data(r, frame);
}

GenusResult genus_potential(const FrobeniusModel& model, const std::vector<Complex>& point, int g, const GenusOptions& options) {
  if (g < 2) throw ValidationError("genus potentials are computed for g >= 2; use genus1-diff for g = 1");
  const int K = 3 * g - 2;
  auto frame = canonical_frame(model, point, K, options.frame);
  auto r = compute_R(model, frame, K, options.r);
  auto data = edge_tail_data(r, frame);
  GenusResult out;
  out.unitarity = unitarity_residual(r);
  out.consistency = r.consistency_residual;
  out.t_residual = data.t_residual;
  if (r.consistency_residual > numeric_context().tolerance * Real(1e10))
    throw NumericalError("R recursion is inconsistent across directions");
  auto input = graph_input(data);
  out.graphs = enumerate_graphs(g);
  for (const auto& graph : out.graphs) {
    Complex v = evaluate_graph(graph, input);
    out.per_graph.push_back(v);
    out.value += v;
  }
  return out;
}

std::vector<ComplexSeries> genus1_form_series(const CanonicalFrame& frame, const RSeries& r) {
  const int n = frame.dimension();
  const int order = std::min(frame.order, r.K);
  if (order < 1) throw ValidationError("the genus-1 form needs jets of order >= 1");
  auto space = SeriesSpace::total_degree(displacement_names(n), order - 1);
  std::vector<ComplexSeries> form(static_cast<std::size_t>(n), ComplexSeries(space));
  for (int i = 0; i < n; ++i) {
    ComplexSeries r1 = r.jets[1](i, i).truncated(space) * Complex(Rational(1, 2));
    const ComplexSeries& delta = frame.delta_series[static_cast<std::size_t>(i)];
    ComplexSeries inv = delta.inverse().truncated(space) * Complex(Rational(1, 48));
    for (int a = 0; a < n; ++a) {
      form[static_cast<std::size_t>(a)] += r1 * frame.du_series[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].truncated(space);
      form[static_cast<std::size_t>(a)] += delta.derivative(a).truncated(space) * inv;
    }
  }
  return form;
}

std::vector<Complex> genus1_differential(const CanonicalFrame& frame, const RSeries& r) {
  std::vector<Complex> out;
  for (const auto& s : genus1_form_series(frame, r)) out.push_back(s.constant_term());
  return out;
}

Real genus1_curl(const std::vector<ComplexSeries>& form) {
  Real worst = 0;
  const int n = static_cast<int>(form.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      worst = std::max(worst, (form[static_cast<std::size_t>(b)].derivative(a) - form[static_cast<std::size_t>(a)].derivative(b)).max_abs());
  return worst;
}

}  // namespace hgf

namespace hgf {

Real genus1_fd_curl(const FrobeniusModel& model, const std::vector<Complex>& point, const Real& h, const GenusOptions& options) {
  const int n = model.dimension();
  static const Rational weights[4] = {Rational(4, 5), Rational(-1, 5), Rational(4, 105), Rational(-1, 280)};
  auto form = [&](const std::vector<Complex>& at) {
    auto frame = canonical_frame(model, at, 1, options.frame);
    return genus1_differential(frame, compute_R(model, frame, 1, options.r));
  };
  // deriv[a][b] = d_a w_b
  std::vector<std::vector<Complex>> deriv(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int s = 1; s <= 4; ++s) {
      auto plus = point, minus = point;
      plus[static_cast<std::size_t>(a)] += Complex(h * s);
      minus[static_cast<std::size_t>(a)] -= Complex(h * s);
      auto wp = form(plus), wm = form(minus);
      Complex c(weights[s - 1]);
      for (int b = 0; b < n; ++b)
        deriv[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += c * (wp[static_cast<std::size_t>(b)] - wm[static_cast<std::size_t>(b)]) / Complex(h);
    }
  Real worst = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      worst = std::max(worst, abs(deriv[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] - deriv[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]));
  return worst;
}

}  // namespace hgf
