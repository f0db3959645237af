#include "hgfrob/descendent.hpp"

#include <algorithm>
#include <functional>

#include "hgfrob/intersection.hpp"

namespace hgf {

namespace {

std::vector<Complex> mat_vec(const Matrix<Complex>& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)] += m(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

Real max_abs(const std::vector<Complex>& v) {
  Real m = 0;
  for (const auto& x : v) m = std::max(m, abs(x));
  return m;
}

int curve_order(const CurvePoint& tau) {
  if (tau.empty()) throw ValidationError("curve point needs at least t_0");
  return static_cast<int>(tau.size()) - 1;
}

void check_curve(const CurvePoint& tau, int n) {
  curve_order(tau);
  for (const auto& tk : tau)
    if (static_cast<int>(tk.size()) != n) throw ValidationError("curve point entries must have the model dimension");
}

// Values of M_0..M_kmax only.
std::vector<Matrix<Complex>> values_upto(const Calibration& cal, const std::vector<Complex>& point, int kmax) {
  if (kmax > cal.K) throw ValidationError("calibration order too low: need " + std::to_string(kmax));
  std::vector<Matrix<Complex>> out;
  for (int k = 0; k <= kmax; ++k) out.push_back(cal.M[static_cast<std::size_t>(k)].map([&](const Expression& e) { return e.evaluate(point); }));
  return out;
}

// dG/dt for G(t) = t - t_0 - g^{-1} sum_k M_k(t) t_k.
Matrix<Complex> newton_jacobian(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau,
                                const std::vector<Matrix<Complex>>& vals, const std::vector<Complex>& t) {
  const int n = model.dimension();
  const int kmax = curve_order(tau);
  auto c = structure_constants(model, t);
  auto ginv = to_complex(cal.metric_inverse);
  Matrix<Complex> j = identity_matrix<Complex>(n);
  for (int gam = 0; gam < n; ++gam) {
    std::vector<Complex> col(static_cast<std::size_t>(n));
    auto ct = c[static_cast<std::size_t>(gam)].transpose();
    for (int k = 1; k <= kmax; ++k) {
      auto v = mat_vec(ct, mat_vec(vals[static_cast<std::size_t>(k - 1)], tau[static_cast<std::size_t>(k)]));
      for (int a = 0; a < n; ++a) col[static_cast<std::size_t>(a)] += v[static_cast<std::size_t>(a)];
    }
    col = mat_vec(ginv, col);
    for (int a = 0; a < n; ++a) j(a, gam) -= col[static_cast<std::size_t>(a)];
  }
  return j;
}

std::vector<Complex> newton_residual(const Calibration& cal, const CurvePoint& tau, const std::vector<Matrix<Complex>>& vals,
                                     const std::vector<Complex>& t) {
  const std::size_t n = t.size();
  std::vector<Complex> acc(n);
  for (std::size_t k = 1; k < tau.size(); ++k) {
    auto v = mat_vec(vals[k], tau[k]);
    for (std::size_t a = 0; a < n; ++a) acc[a] += v[a];
  }
  acc = mat_vec(to_complex(cal.metric_inverse), acc);
  std::vector<Complex> out(n);
  for (std::size_t a = 0; a < n; ++a) out[a] = t[a] - tau[0][a] - acc[a];
  return out;
}

CurvePoint shifted(const CurvePoint& tau, int direction, const Complex& by) {
  CurvePoint out = tau;
  const int n = static_cast<int>(tau[0].size());
  out[static_cast<std::size_t>(direction / n)][static_cast<std::size_t>(direction % n)] += by;
  return out;
}

}  // namespace

Calibration compute_calibration(const FrobeniusModel& model, const std::vector<Rational>& base, int K) {
  const int n = model.dimension();
  if (static_cast<int>(base.size()) != n) throw ValidationError("calibration base point has the wrong dimension");
  if (K < 0) throw ValidationError("calibration order must be non-negative");
  if (model.potential().has_parameters()) throw ValidationError("bind model parameters before calibrating");
  Calibration cal;
  cal.base = base;
  cal.K = K;
  cal.metric = model.metric();
  cal.metric_inverse = model.metric_inverse();

  // c[gam](a, nu) = F_{gam a mu} g^{mu nu}
  std::vector<Matrix<Expression>> c;
  for (int gam = 0; gam < n; ++gam) {
    Matrix<Expression> m(n, n, Expression(n));
    for (int a = 0; a < n; ++a)
      for (int nu = 0; nu < n; ++nu)
        for (int mu = 0; mu < n; ++mu)
          if (cal.metric_inverse(mu, nu) != 0) m(a, nu) += model.third_derivative(gam, a, mu) * cal.metric_inverse(mu, nu);
    c.push_back(std::move(m));
  }
  Matrix<Expression> m0(n, n, Expression(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m0(a, b) = Expression::constant(n, cal.metric(a, b));
  cal.M.push_back(m0);

  for (int k = 1; k <= K; ++k) {
    const auto& prev = cal.M.back();
    Matrix<Expression> next(n, n, Expression(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        std::vector<Expression> grad;
        for (int gam = 0; gam < n; ++gam) {
          Expression e(n);
          for (int nu = 0; nu < n; ++nu) e += c[static_cast<std::size_t>(gam)](a, nu) * prev(nu, b);
          grad.push_back(std::move(e));
        }
        Expression f(n);
        for (int gam = 0; gam < n; ++gam) f += (grad[static_cast<std::size_t>(gam)] - f.diff(gam)).antidiff(gam);
        for (int gam = 0; gam < n; ++gam)
          if (!(f.diff(gam) == grad[static_cast<std::size_t>(gam)]))
            throw ValidationError("calibration gradient is not integrable (WDVV fails) at order " + std::to_string(k));
        f -= Expression::constant(n, f.evaluate_exact(base));
        next(a, b) = std::move(f);
      }
    cal.M.push_back(std::move(next));
  }
  return cal;
}

std::vector<Matrix<Complex>> calibration_values(const Calibration& cal, const std::vector<Complex>& point) {
  return values_upto(cal, point, cal.K);
}

Real calibration_unitarity(const Calibration& cal, const std::vector<Complex>& point) {
  auto vals = calibration_values(cal, point);
  auto ginv = to_complex(cal.metric_inverse);
  Real worst = 0;
  for (int k = 1; k <= cal.K; ++k) {
    Matrix<Complex> acc(ginv.rows(), ginv.cols(), Complex(0));
    for (int p = 0; p <= k; ++p) {
      auto term = vals[static_cast<std::size_t>(p)].transpose() * ginv * vals[static_cast<std::size_t>(k - p)];
      if (p % 2) acc -= term;
      else acc += term;
    }
    worst = std::max(worst, max_abs(acc));
  }
  return worst;
}

CriticalPoint critical_point(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau) {
  check_curve(tau, model.dimension());
  const int kmax = curve_order(tau);
  CriticalPoint cp;
  cp.t = tau[0];
  const Real tol = numeric_context().tolerance;
  const Real floor = pow(Real(2), -numeric_context().precision_bits) * Real(1000);
  Real previous = -1;
  for (int it = 0; it < 200; ++it) {
    auto vals = values_upto(cal, cp.t, kmax);
    auto g = newton_residual(cal, tau, vals, cp.t);
    cp.residual = max_abs(g);
    cp.iterations = it;
    Real scale = std::max(Real(1), max_abs(cp.t));
    if (cp.residual <= floor * scale) return cp;
    if (previous >= 0 && cp.residual >= previous && cp.residual <= tol * scale) return cp;
    previous = cp.residual;
    auto step = solve(newton_jacobian(model, cal, tau, vals, cp.t), g);
    // Backtrack while the full step increases the residual.
    Real lambda = 1;
    std::vector<Complex> trial;
    for (int halve = 0; halve < 40; ++halve, lambda /= 2) {
      trial = cp.t;
      for (std::size_t a = 0; a < step.size(); ++a) trial[a] -= step[a] * Complex(lambda);
      if (max_abs(newton_residual(cal, tau, values_upto(cal, trial, kmax), trial)) < cp.residual) break;
    }
    cp.t = std::move(trial);
  }
  if (cp.residual <= tol) return cp;
  throw NumericalError("critical point iteration did not converge; residual " + cp.residual.str(8));
}

std::vector<std::vector<Complex>> unit_jets(const Calibration& cal, const CurvePoint& tau, const std::vector<Matrix<Complex>>& values,
                                            const std::vector<Complex>& t, int unit_index, int mmax) {
  const int n = static_cast<int>(t.size());
  const int kmax = curve_order(tau);
  auto g = to_complex(cal.metric);
  std::vector<std::vector<Complex>> jets;
  for (int m = 0; m <= mmax; ++m) {
    std::vector<Complex> f(static_cast<std::size_t>(n));
    if (m == 0) {
      std::vector<Complex> d(static_cast<std::size_t>(n));
      for (int a = 0; a < n; ++a) d[static_cast<std::size_t>(a)] = tau[0][static_cast<std::size_t>(a)] - t[static_cast<std::size_t>(a)];
      f = mat_vec(g, d);
    } else if (m == 1) {
      for (int a = 0; a < n; ++a) f[static_cast<std::size_t>(a)] = -g(a, unit_index);
    }
    for (int k = std::max(1, m); k <= kmax; ++k) {
      auto v = mat_vec(values[static_cast<std::size_t>(k - m)], tau[static_cast<std::size_t>(k)]);
      for (int a = 0; a < n; ++a) f[static_cast<std::size_t>(a)] += v[static_cast<std::size_t>(a)];
    }
    jets.push_back(std::move(f));
  }
  return jets;
}

Matrix<Complex> inverse_jacobian(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau,
                                 const std::vector<Complex>& t) {
  auto vals = values_upto(cal, t, curve_order(tau));
  return newton_jacobian(model, cal, tau, vals, t);
}

Matrix<Complex> critical_point_derivative(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau,
                                          const std::vector<Complex>& t) {
  const int n = model.dimension();
  const int kmax = curve_order(tau);
  auto vals = values_upto(cal, t, kmax);
  auto jinv = inverse(newton_jacobian(model, cal, tau, vals, t));
  auto ginv = to_complex(cal.metric_inverse);
  Matrix<Complex> out(n, n * (kmax + 1), Complex(0));
  for (int k = 0; k <= kmax; ++k) {
    auto m = k == 0 ? jinv : jinv * ginv * vals[static_cast<std::size_t>(k)];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out(a, k * n + b) = m(a, b);
  }
  return out;
}

Genus0Descendents genus0_descendents(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau) {
  const int n = model.dimension();
  const int kmax = curve_order(tau);
  auto cp = critical_point(model, cal, tau);
  // The dilaton shift -c reaches index 1 even when kmax = 0.
  const int span = std::max(kmax, 1);
  auto vals = values_upto(cal, cp.t, 2 * span + 1);
  auto ginv = to_complex(cal.metric_inverse);

  // N(x, y) = M(x)^T g^{-1} M(y) - g; P = N / (x + y).
  std::map<std::pair<int, int>, Matrix<Complex>> num;
  auto numerator = [&](int a, int b) -> const Matrix<Complex>& {
    auto key = std::make_pair(a, b);
    auto it = num.find(key);
    if (it == num.end()) {
      auto m = vals[static_cast<std::size_t>(a)].transpose() * ginv * vals[static_cast<std::size_t>(b)];
      if (a == 0 && b == 0) m -= vals[0];
      it = num.emplace(key, std::move(m)).first;
    }
    return it->second;
  };
  std::map<std::pair<int, int>, Matrix<Complex>> q;
  for (int s = 0; s <= 2 * span; ++s)
    for (int b = 0; b <= s; ++b) {
      int a = s - b;
      Matrix<Complex> m = numerator(a + 1, b);
      if (b > 0) m -= q.at({a + 1, b - 1});
      q.emplace(std::make_pair(a, b), std::move(m));
    }

  Genus0Descendents out;
  out.t_star = cp.t;
  std::vector<std::vector<Complex>> shift(tau);
  if (kmax >= 1) shift[1][static_cast<std::size_t>(model.unit_index())] -= Complex(1);
  else shift.push_back([&] {
    std::vector<Complex> v(static_cast<std::size_t>(n));
    v[static_cast<std::size_t>(model.unit_index())] = Complex(-1);
    return v;
  }());
  for (int m = 0; m <= kmax; ++m) {
    std::vector<Complex> d(static_cast<std::size_t>(n));
    for (int l = 0; l <= span; ++l) {
      auto v = mat_vec(q.at({m, l}), shift[static_cast<std::size_t>(l)]);
      for (int a = 0; a < n; ++a) d[static_cast<std::size_t>(a)] += v[static_cast<std::size_t>(a)];
    }
    out.first.push_back(std::move(d));
    for (int l = 0; l <= kmax; ++l) out.second.emplace(std::make_pair(m, l), q.at({m, l}));
  }
  // F0 = 1/2 sum_{m,l} s_m P_ml s_l, including the c-shift rows beyond kmax.
  Complex f0;
  for (int m = 0; m <= span; ++m)
    for (int l = 0; l <= span; ++l) {
      auto v = mat_vec(q.at({m, l}), shift[static_cast<std::size_t>(l)]);
      for (int a = 0; a < n; ++a) f0 += shift[static_cast<std::size_t>(m)][static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(a)];
    }
  out.F0 = f0 * Complex(Real(1) / 2);
  return out;
}

DescendentFrame bold_quantities(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau, int K,
                                const GenusOptions& options) {
  const int n = model.dimension();
  const int kmax = curve_order(tau);
  auto cp = critical_point(model, cal, tau);
  DescendentFrame out;
  out.t_star = cp.t;
  out.frame = canonical_frame(model, cp.t, std::max(K, 1), options.frame);
  out.r = compute_R(model, out.frame, K, options.r);
  out.edges = edge_tail_data(out.r, out.frame);

  auto vals = values_upto(cal, cp.t, kmax);
  auto jets = unit_jets(cal, tau, vals, cp.t, model.unit_index(), K + 1);
  auto psi_ginv = out.frame.psi * to_complex(cal.metric_inverse);
  std::vector<std::vector<Complex>> w;
  for (int m = 0; m <= K + 1; ++m) {
    auto v = mat_vec(psi_ginv, jets[static_cast<std::size_t>(m)]);
    if (m % 2)
      for (auto& x : v) x = -x;
    w.push_back(std::move(v));
  }
  // rhs[k][i] = sum_{a+m=k} (R_a w_m)_i
  std::vector<std::vector<Complex>> rhs(static_cast<std::size_t>(K + 2), std::vector<Complex>(static_cast<std::size_t>(n)));
  for (int k = 0; k <= K + 1; ++k)
    for (int a = 0; a <= std::min(k, K); ++a) {
      auto v = mat_vec(out.r.R[static_cast<std::size_t>(a)], w[static_cast<std::size_t>(k - a)]);
      for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i)];
    }
  out.criticality_residual = max_abs(rhs[0]);
  const Real tol = numeric_context().tolerance;
  if (out.criticality_residual > tol * std::max(Real(1), max_abs(rhs[1])))
    throw NumericalError("one-point expansion has a z^0 term: critical point inconsistent");
  out.T.assign(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(K + 2)));
  for (int i = 0; i < n; ++i) {
    const Complex& inv = rhs[1][static_cast<std::size_t>(i)];
    if (abs(inv) <= tol) throw NumericalError("bold D is singular at this curve point");
    Complex s = Complex(1) / inv;
    out.sqrt_D.push_back(s);
    out.D.push_back(s * s);
    for (int k = 2; k <= K + 1; ++k) {
      Complex v = s * rhs[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      out.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = k % 2 ? -v : v;
    }
  }
  return out;
}

GraphInput<Complex> bold_input(const DescendentFrame& frame) {
  GraphInput<Complex> in;
  in.N = frame.edges.N;
  in.delta = frame.D;
  in.tail = frame.T;
  struct Shared {
    EdgeTailData edges;
    std::vector<Complex> sqrt_D;
  };
  auto shared = std::make_shared<Shared>(Shared{frame.edges, frame.sqrt_D});
  in.weight = [shared](int i, int j, int k, int l) {
    return shared->edges.v(i, j, k, l) * shared->sqrt_D[static_cast<std::size_t>(i)] * shared->sqrt_D[static_cast<std::size_t>(j)];
  };
  return in;
}

DescendentResult descendent_potential(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau, int g,
                                      const GenusOptions& options) {
  if (g < 2) throw ValidationError("descendent potentials are computed by graph sum for g >= 2");
  DescendentResult out;
  out.frame = bold_quantities(model, cal, tau, 3 * g - 2, options);
  if (out.frame.r.consistency_residual > numeric_context().tolerance * Real(1e10))
    throw NumericalError("R recursion is inconsistent across directions");
  auto input = bold_input(out.frame);
  for (const auto& graph : enumerate_graphs(g)) out.value += evaluate_graph(graph, input);
  return out;
}

std::vector<Complex> genus1_descendent_bold(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau,
                                            const Real& h, const GenusOptions& options) {
  const int n = model.dimension();
  const int dirs = n * (curve_order(tau) + 1);
  auto here = bold_quantities(model, cal, tau, 1, options);
  auto dt = critical_point_derivative(model, cal, tau, here.t_star);
  std::vector<Complex> out(static_cast<std::size_t>(dirs));
  for (int d = 0; d < dirs; ++d) {
    auto plus = bold_quantities(model, cal, shifted(tau, d, Complex(h)), 1, options);
    auto minus = bold_quantities(model, cal, shifted(tau, d, Complex(-h)), 1, options);
    Complex acc;
    for (int i = 0; i < n; ++i) {
      Complex du;
      for (int a = 0; a < n; ++a) du += here.frame.du(a, i) * dt(a, d);
      acc += here.r.R[1](i, i) * du / Complex(2);
      Complex dlog = log(plus.D[static_cast<std::size_t>(i)] / minus.D[static_cast<std::size_t>(i)]) / Complex(h * 2);
      acc += dlog / Complex(48);
    }
    out[static_cast<std::size_t>(d)] = acc;
  }
  return out;
}

std::vector<Complex> genus1_descendent_det(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau,
                                           const Real& h, const GenusOptions& options) {
  const int n = model.dimension();
  const int dirs = n * (curve_order(tau) + 1);
  auto cp = critical_point(model, cal, tau);
  auto frame = canonical_frame(model, cp.t, 1, options.frame);
  auto r = compute_R(model, frame, 1, options.r);
  auto df1 = genus1_differential(frame, r);
  auto dt = critical_point_derivative(model, cal, tau, cp.t);
  auto det_inv = [&](const CurvePoint& at) {
    auto c = critical_point(model, cal, at);
    return determinant(inverse_jacobian(model, cal, at, c.t));
  };
  std::vector<Complex> out(static_cast<std::size_t>(dirs));
  for (int d = 0; d < dirs; ++d) {
    Complex acc;
    for (int a = 0; a < n; ++a) acc += df1[static_cast<std::size_t>(a)] * dt(a, d);
    Complex ratio = det_inv(shifted(tau, d, Complex(h))) / det_inv(shifted(tau, d, Complex(-h)));
    acc -= log(ratio) / Complex(h * 2) / Complex(24);
    out[static_cast<std::size_t>(d)] = acc;
  }
  return out;
}

Complex pt_descendent_direct(int g, const CurvePoint& tau, const Real& cutoff, int max_insertions) {
  check_curve(tau, 1);
  if (g < 2) throw ValidationError("the direct point sum is implemented for g >= 2");
  const int kmax = curve_order(tau);
  // Without t_k, k >= 2, only tau_0 and tau_1 appear and every number vanishes.
  if (kmax < 2) return Complex(0);
  std::vector<Complex> t;
  for (const auto& tk : tau) t.push_back(tk[0]);
  while (t.size() < 2) t.emplace_back(0);
  const Complex inv = Complex(1) / (Complex(1) - t[1]);
  Complex total;
  int quiet = 0;
  for (int n = 0; n <= max_insertions; ++n) {
    if (2 * g - 2 + n <= 0) continue;
    Complex shell;
    for (int a = 0; a <= n; ++a) {
      const int m0 = n - a;
      const int target = 3 * g - 3 + m0;
      // multisets of indices in [2, kmax] of size a with sum of (k - 1) = target
      std::vector<int> mult(static_cast<std::size_t>(kmax + 1), 0);
      std::function<void(int, int, int)> rec = [&](int k, int left_count, int left_weight) {
        if (k < 2) {
          if (left_count != 0 || left_weight != 0) return;
          std::vector<int> ks(static_cast<std::size_t>(m0), 0);
          Complex term(1);
          for (int j = 2; j <= kmax; ++j)
            for (int r = 0; r < mult[static_cast<std::size_t>(j)]; ++r) {
              ks.push_back(j);
              term = term * t[static_cast<std::size_t>(j)] / Complex(Real(r + 1));
            }
          Rational v = psi_intersection(g, ks);
          if (v == 0) return;
          for (int r = 0; r < m0; ++r) term = term * t[0] / Complex(Real(r + 1));
          shell += term * Complex(v);
          return;
        }
        for (int m = 0; m <= left_count && m * (k - 1) <= left_weight; ++m) {
          if ((left_count - m) * (k - 2) < left_weight - m * (k - 1) && k > 2) {
            // the remaining smaller indices cannot reach the weight
            continue;
          }
          mult[static_cast<std::size_t>(k)] = m;
          rec(k - 1, left_count - m, left_weight - m * (k - 1));
        }
        mult[static_cast<std::size_t>(k)] = 0;
      };
      if (kmax >= 2 || a == 0) rec(kmax, a, target);
    }
    Complex pre(1);
    for (int r = 0; r < 2 * g - 2 + n; ++r) pre = pre * inv;
    shell = shell * pre;
    total += shell;
    if (abs(shell) <= cutoff * std::max(Real(1e-300), abs(total)) && abs(total) > 0) {
      if (++quiet >= 3) return total;
    } else {
      quiet = 0;
    }
  }
  throw NumericalError("direct descendent sum did not converge within the insertion limit");
}

}  // namespace hgf
