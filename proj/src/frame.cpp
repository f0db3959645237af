#include "hgfrob/frame.hpp"

#include <algorithm>
#include <numeric>

namespace hgf {

namespace {

using SeriesVec = std::vector<ComplexSeries>;

// Multiplication operator of x: M(g, b) = sum_a x^a C_a(g, b).
Matrix<ComplexSeries> multiplication_operator(const std::vector<Matrix<ComplexSeries>>& c, const SeriesVec& x) {
  const int n = static_cast<int>(x.size());
  Matrix<ComplexSeries> m(n, n, ComplexSeries(x.front().space()));
  for (int a = 0; a < n; ++a) {
    if (x[static_cast<std::size_t>(a)].is_zero()) continue;
    for (int g = 0; g < n; ++g)
      for (int b = 0; b < n; ++b) m(g, b) += x[static_cast<std::size_t>(a)] * c[static_cast<std::size_t>(a)](g, b);
  }
  return m;
}

SeriesVec apply_operator(const Matrix<ComplexSeries>& m, const SeriesVec& y) {
  SeriesVec out(y.size(), ComplexSeries(y.front().space()));
  for (int g = 0; g < m.rows(); ++g)
    for (int b = 0; b < m.cols(); ++b) out[static_cast<std::size_t>(g)] += m(g, b) * y[static_cast<std::size_t>(b)];
  return out;
}

Real max_abs(const SeriesVec& v) {
  Real best = 0;
  for (const auto& s : v) {
    Real m = s.max_abs();
    if (m > best) best = m;
  }
  return best;
}

bool complex_less(const Complex& a, const Complex& b) {
  Real scale = abs(a) + abs(b) + 1;
  Real tol = numeric_context().tolerance * scale;
  if (boost::multiprecision::abs(a.real() - b.real()) > tol) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<std::string> displacement_names(int n) {
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) names.push_back("d" + std::to_string(a));
  return names;
}

ComplexSeries integrate_gradient(const std::vector<ComplexSeries>& grad) {
  const SpacePtr& space = grad.front().space();
  ComplexSeries radial(space);
  for (std::size_t a = 0; a < grad.size(); ++a)
    radial += ComplexSeries::variable(space, static_cast<int>(a)) * grad[a];
  ComplexSeries out(space);
  for (const auto& [e, c] : radial.terms()) {
    int deg = 0;
    for (auto x : e) deg += x;
    out.add_term(e, c / Complex(Real(deg)));
  }
  return out;
}

Complex CanonicalFrame::du(int a, int i) const {
  return du_series[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].constant_term();
}

CanonicalFrame canonical_frame(const FrobeniusModel& model, const std::vector<Complex>& point, int order,
                               const FrameOptions& options) {
  const int n = model.dimension();
  if (static_cast<int>(point.size()) != n) throw ValidationError("point dimension mismatch");
  if (order < 0) throw ValidationError("frame order must be nonnegative");
  const Real& tol = numeric_context().tolerance;
  const Real converged = tol * boost::multiprecision::sqrt(tol);

  // Generic multiplication operator at the point.
  auto c0 = structure_constants(model, point);
  Matrix<Complex> generic(n, n, Complex());
  for (int a = 0; a < n; ++a) {
    Complex w(Rational(2 * a + 3, 7 * a + 5));
    if (a == model.unit_index()) w = Complex(0);
    generic += scaled(c0[static_cast<std::size_t>(a)], w);
  }
  std::vector<Complex> lambda = polynomial_roots(characteristic_polynomial(generic));
  Real scale = 1;
  for (const auto& l : lambda) scale = std::max(scale, abs(l));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (abs(lambda[static_cast<std::size_t>(i)] - lambda[static_cast<std::size_t>(j)]) <= tol * scale * 1000)
        throw NumericalError("point is not semisimple: eigenvalue collision of the multiplication operator");

  // Lagrange projectors applied to the unit vector give the idempotents.
  Matrix<Complex> id = identity_matrix<Complex>(n);
  std::vector<std::vector<Complex>> e0;
  for (int i = 0; i < n; ++i) {
    Matrix<Complex> p = id;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Complex den = lambda[static_cast<std::size_t>(i)] - lambda[static_cast<std::size_t>(j)];
      p = p * scaled(generic - scaled(id, lambda[static_cast<std::size_t>(j)]), Complex(1) / den);
    }
    std::vector<Complex> v(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) v[static_cast<std::size_t>(b)] = p(b, model.unit_index());
    e0.push_back(v);
  }

  SpacePtr space = SeriesSpace::total_degree(displacement_names(n), order);
  auto third = third_derivative_series(model, point, space);
  Matrix<ComplexSeries> ginv = to_complex(model.metric_inverse()).map([&](const Complex& x) {
    return ComplexSeries::constant(space, x);
  });
  std::vector<Matrix<ComplexSeries>> c;
  for (const auto& l : third) c.push_back(ginv * l);

  // e <- 3e^2 - 2e^3 converges to the nearby idempotent, doubling the
  // correct order each step.
  std::vector<SeriesVec> idem;
  int min_iter = 2;
  for (int k = 1; k < order + 1; k *= 2) ++min_iter;
  for (int i = 0; i < n; ++i) {
    SeriesVec e;
    for (int b = 0; b < n; ++b) e.push_back(ComplexSeries::constant(space, e0[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)]));
    for (int iter = 0; iter < 80; ++iter) {
      auto m = multiplication_operator(c, e);
      SeriesVec e2 = apply_operator(m, e);
      SeriesVec e3 = apply_operator(m, e2);
      SeriesVec next(static_cast<std::size_t>(n), ComplexSeries(space));
      SeriesVec diff(static_cast<std::size_t>(n), ComplexSeries(space));
      for (int b = 0; b < n; ++b) {
        const auto bi = static_cast<std::size_t>(b);
        next[bi] = e2[bi] * Complex(3) - e3[bi] * Complex(2);
        diff[bi] = next[bi] - e[bi];
      }
      e = std::move(next);
      if (iter + 1 >= min_iter && max_abs(diff) <= converged * std::max(Real(1), max_abs(e))) break;
      if (iter == 79) throw NumericalError("idempotent refinement did not converge");
    }
    idem.push_back(std::move(e));
  }

  // Default order: canonical coordinate values (conformal) or generic
  // eigenvalues, ascending real part then imaginary part.
  Matrix<Complex> g = to_complex(model.metric());
  std::vector<SeriesVec> du_by_i;
  std::vector<ComplexSeries> delta_s;
  for (int i = 0; i < n; ++i) {
    ComplexSeries norm(space);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (g(a, b) == Complex()) continue;
        norm += idem[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] * idem[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] * g(a, b);
      }
    if (abs(norm.constant_term()) <= tol) throw NumericalError("degenerate metric on an idempotent");
    ComplexSeries delta = norm.inverse();
    SeriesVec du(static_cast<std::size_t>(n), ComplexSeries(space));
    for (int a = 0; a < n; ++a) {
      ComplexSeries s(space);
      for (int b = 0; b < n; ++b)
        if (!(g(a, b) == Complex())) s += idem[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] * g(a, b);
      du[static_cast<std::size_t>(a)] = delta * s;
    }
    delta_s.push_back(delta);
    du_by_i.push_back(du);
  }
  std::vector<ComplexSeries> u_s;
  if (model.conformal()) {
    const auto& eu = *model.euler();
    std::vector<Complex> e_at = model.euler_field(point);
    for (int i = 0; i < n; ++i) {
      ComplexSeries u(space);
      for (int a = 0; a < n; ++a) {
        ComplexSeries ea = ComplexSeries::constant(space, e_at[static_cast<std::size_t>(a)]);
        for (int b = 0; b < n; ++b)
          if (eu.matrix(a, b) != 0) ea += ComplexSeries::variable(space, b) * Complex(eu.matrix(a, b));
        u += ea * du_by_i[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
      }
      u_s.push_back(u);
    }
  } else {
    for (int i = 0; i < n; ++i) u_s.push_back(integrate_gradient(du_by_i[static_cast<std::size_t>(i)]));
  }

  std::vector<int> order_idx(static_cast<std::size_t>(n));
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::vector<Complex> key;
  for (int i = 0; i < n; ++i)
    key.push_back(model.conformal() ? u_s[static_cast<std::size_t>(i)].constant_term() : lambda[static_cast<std::size_t>(i)]);
  std::stable_sort(order_idx.begin(), order_idx.end(),
                   [&](int x, int y) { return complex_less(key[static_cast<std::size_t>(x)], key[static_cast<std::size_t>(y)]); });
  if (!options.permutation.empty()) {
    if (static_cast<int>(options.permutation.size()) != n) throw ValidationError("permutation has wrong length");
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> permuted;
    for (int p : options.permutation) {
      if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]++) throw ValidationError("invalid permutation");
      permuted.push_back(order_idx[static_cast<std::size_t>(p)]);
    }
    order_idx = permuted;
  }
  if (!options.flip.empty() && static_cast<int>(options.flip.size()) != n) throw ValidationError("flip list has wrong length");
  if (!options.anchors.empty() && static_cast<int>(options.anchors.size()) != n)
    throw ValidationError("anchor list has wrong length");

  CanonicalFrame f;
  f.point = point;
  f.order = order;
  f.space = space;
  f.du_series.assign(static_cast<std::size_t>(n), SeriesVec(static_cast<std::size_t>(n), ComplexSeries(space)));
  f.psi_series = Matrix<ComplexSeries>(n, n, ComplexSeries(space));
  f.psi = Matrix<Complex>(n, n, Complex());
  for (int out = 0; out < n; ++out) {
    const auto src = static_cast<std::size_t>(order_idx[static_cast<std::size_t>(out)]);
    ComplexSeries u = u_s[src];
    if (!model.conformal() && !options.anchors.empty()) u += ComplexSeries::constant(space, options.anchors[static_cast<std::size_t>(out)]);
    ComplexSeries sq = delta_s[src].pow(Rational(1, 2));
    {
      // Branch: Re >= 0, and Im >= 0 when Re vanishes within tolerance.
      Complex c = sq.constant_term();
      Real slack = tol * abs(c);
      if (c.real() < -slack || (boost::multiprecision::abs(c.real()) <= slack && c.imag() < 0)) sq = -sq;
    }
    bool flip = !options.flip.empty() && options.flip[static_cast<std::size_t>(out)];
    if (flip) sq = -sq;
    f.flipped.push_back(flip);
    f.u_series.push_back(u);
    f.u.push_back(u.constant_term());
    f.delta_series.push_back(delta_s[src]);
    f.delta.push_back(delta_s[src].constant_term());
    f.sqrt_delta_series.push_back(sq);
    f.sqrt_delta.push_back(sq.constant_term());
    f.idempotents.push_back(idem[src]);
    for (int a = 0; a < n; ++a) f.du_series[static_cast<std::size_t>(a)][static_cast<std::size_t>(out)] = du_by_i[src][static_cast<std::size_t>(a)];
    // Psi^i_b = Delta_i^{-1/2} du^i/dt^b = Delta_i^{1/2} g_{ba} e_i^a
    for (int b = 0; b < n; ++b) {
      ComplexSeries s(space);
      for (int a = 0; a < n; ++a)
        if (!(g(b, a) == Complex())) s += idem[src][static_cast<std::size_t>(a)] * g(b, a);
      f.psi_series(out, b) = sq * s;
      f.psi(out, b) = f.psi_series(out, b).constant_term();
    }
  }
  return f;
}

FrameResiduals frame_residuals(const FrobeniusModel& model, const CanonicalFrame& frame) {
  const int n = model.dimension();
  Matrix<Complex> g = to_complex(model.metric());
  Matrix<Complex> ginv = to_complex(model.metric_inverse());
  FrameResiduals r;
  r.metric = max_abs(frame.psi.transpose() * frame.psi - g);
  r.orthonormal = max_abs(frame.psi * ginv * frame.psi.transpose() - identity_matrix<Complex>(n));
  auto c = structure_constants(model, frame.point);
  r.idempotent = 0;
  std::vector<Complex> sum(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<Complex> ei;
    for (int b = 0; b < n; ++b) ei.push_back(frame.idempotents[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)].constant_term());
    for (int b = 0; b < n; ++b) sum[static_cast<std::size_t>(b)] += ei[static_cast<std::size_t>(b)];
    for (int j = 0; j < n; ++j) {
      // (e_i e_j)^g = e_i^a e_j^b C_a(g, b)
      for (int gi = 0; gi < n; ++gi) {
        Complex acc;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            acc += ei[static_cast<std::size_t>(a)] * frame.idempotents[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)].constant_term() *
                   c[static_cast<std::size_t>(a)](gi, b);
        Complex expect = i == j ? ei[static_cast<std::size_t>(gi)] : Complex();
        Real v = abs(acc - expect);
        if (v > r.idempotent) r.idempotent = v;
      }
    }
  }
  r.unit = 0;
  for (int b = 0; b < n; ++b) {
    Real v = abs(sum[static_cast<std::size_t>(b)] - Complex(b == model.unit_index() ? 1 : 0));
    if (v > r.unit) r.unit = v;
  }
  r.w_diagonal = 0;
  if (frame.order >= 1) {
    Matrix<Complex> psi_inv = ginv * frame.psi.transpose();
    for (int a = 0; a < n; ++a) {
      Matrix<Complex> dpsi = frame.psi_series.map([&](const ComplexSeries& s) { return s.derivative(a).constant_term(); });
      Matrix<Complex> w = dpsi * psi_inv;
      for (int i = 0; i < n; ++i) {
        Real v = abs(w(i, i));
        if (v > r.w_diagonal) r.w_diagonal = v;
      }
    }
  }
  return r;
}

}  // namespace hgf
