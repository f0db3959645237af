#include "hgfrob/frobenius.hpp"

namespace hgf {

namespace {

int sym_index(int n, int a, int b, int c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return (a * n + b) * n + c;
}

Real max_abs(const Complex& x, Real current) {
  Real v = abs(x);
  return v > current ? v : current;
}

}  // namespace

std::vector<Complex> to_complex(const std::vector<Rational>& v) {
  std::vector<Complex> out;
  out.reserve(v.size());
  for (const auto& q : v) out.emplace_back(q);
  return out;
}

FrobeniusModel::FrobeniusModel(Matrix<Rational> metric, Expression potential, int unit_index,
                               std::optional<EulerData> euler, std::string name)
    : metric_(std::move(metric)),
      potential_(std::move(potential)),
      unit_index_(unit_index),
      euler_(std::move(euler)),
      name_(std::move(name)) {
  const int n = metric_.rows();
  if (n < 1 || metric_.cols() != n) throw ValidationError("metric must be a nonempty square matrix");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (metric_(a, b) != metric_(b, a)) throw ValidationError("metric is not symmetric");
  if (determinant(metric_) == 0) throw ValidationError("metric is degenerate");
  metric_inverse_ = inverse(metric_);
  if (potential_.variables() != n) throw ValidationError("potential dimension does not match the metric");
  if (potential_.has_parameters()) throw ValidationError("potential has unbound parameters");
  if (unit_index_ < 0 || unit_index_ >= n) throw ValidationError("unit index out of range");
  if (euler_) {
    if (euler_->matrix.rows() != n || euler_->matrix.cols() != n || static_cast<int>(euler_->shift.size()) != n)
      throw ValidationError("Euler data dimension mismatch");
  }
  third_.resize(static_cast<std::size_t>(n * n * n));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c)
        third_[static_cast<std::size_t>(sym_index(n, a, b, c))] = potential_.diff(a).diff(b).diff(c);
}

const Expression& FrobeniusModel::third_derivative(int a, int b, int c) const {
  return third_[static_cast<std::size_t>(sym_index(dimension(), a, b, c))];
}

std::vector<Complex> FrobeniusModel::euler_field(const std::vector<Complex>& point) const {
  if (!euler_) throw ValidationError("model has no Euler data");
  const int n = dimension();
  std::vector<Complex> e(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    Complex acc(euler_->shift[static_cast<std::size_t>(a)]);
    for (int b = 0; b < n; ++b) {
      if (euler_->matrix(a, b) != 0) acc += Complex(euler_->matrix(a, b)) * point[static_cast<std::size_t>(b)];
    }
    e[static_cast<std::size_t>(a)] = acc;
  }
  return e;
}

std::vector<Matrix<Complex>> third_derivatives(const FrobeniusModel& model, const std::vector<Complex>& point) {
  const int n = model.dimension();
  if (static_cast<int>(point.size()) != n) throw ValidationError("point dimension mismatch");
  std::vector<Matrix<Complex>> out(static_cast<std::size_t>(n), Matrix<Complex>(n, n, Complex()));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c) {
        Complex v = model.third_derivative(a, b, c).evaluate(point);
        int idx[3] = {a, b, c};
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q)
            for (int r = 0; r < 3; ++r)
              if (p != q && q != r && p != r) out[static_cast<std::size_t>(idx[p])](idx[q], idx[r]) = v;
      }
  return out;
}

std::vector<Matrix<ComplexSeries>> third_derivative_series(const FrobeniusModel& model,
                                                           const std::vector<Complex>& point, const SpacePtr& space) {
  const int n = model.dimension();
  if (static_cast<int>(point.size()) != n) throw ValidationError("point dimension mismatch");
  ComplexSeries zero(space);
  std::vector<Matrix<ComplexSeries>> out(static_cast<std::size_t>(n), Matrix<ComplexSeries>(n, n, zero));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c) {
        ComplexSeries v = model.third_derivative(a, b, c).taylor(point, space);
        int idx[3] = {a, b, c};
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q)
            for (int r = 0; r < 3; ++r)
              if (p != q && q != r && p != r) out[static_cast<std::size_t>(idx[p])](idx[q], idx[r]) = v;
      }
  return out;
}

std::vector<Matrix<Complex>> structure_constants(const FrobeniusModel& model, const std::vector<Complex>& point) {
  auto third = third_derivatives(model, point);
  Matrix<Complex> ginv = to_complex(model.metric_inverse());
  std::vector<Matrix<Complex>> c;
  c.reserve(third.size());
  // (C_a)^g_b = F_{abm} g^{mg}: rows g, columns b.
  for (const auto& l : third) c.push_back(ginv * l);
  return c;
}

Real check_wdvv(const FrobeniusModel& model, const std::vector<Complex>& point) {
  auto third = third_derivatives(model, point);
  Matrix<Complex> ginv = to_complex(model.metric_inverse());
  const int n = model.dimension();
  // A[a][b](g,d) = F_{abm} g^{mn} F_{ngd}
  std::vector<Matrix<Complex>> lg;
  for (const auto& l : third) lg.push_back(l * ginv);
  Real worst = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Complex lhs;
          Complex rhs;
          for (int m = 0; m < n; ++m) {
            lhs += lg[static_cast<std::size_t>(a)](b, m) * third[static_cast<std::size_t>(m)](c, d);
            rhs += lg[static_cast<std::size_t>(a)](c, m) * third[static_cast<std::size_t>(m)](b, d);
          }
          worst = max_abs(lhs - rhs, worst);
        }
  return worst;
}

Real unit_residual(const FrobeniusModel& model, const std::vector<Complex>& point) {
  auto third = third_derivatives(model, point);
  const auto& u = third[static_cast<std::size_t>(model.unit_index())];
  Real worst = 0;
  for (int a = 0; a < model.dimension(); ++a)
    for (int b = 0; b < model.dimension(); ++b) worst = max_abs(u(a, b) - Complex(model.metric()(a, b)), worst);
  return worst;
}

Real euler_residual(const FrobeniusModel& model, const std::vector<Complex>& point) {
  if (!model.euler()) throw ValidationError("model has no Euler data");
  const auto& eu = *model.euler();
  const int n = model.dimension();
  const Matrix<Rational>& a = eu.matrix;
  const Rational& dim = eu.conformal_dimension;
  auto third = third_derivatives(model, point);
  std::vector<Complex> e = model.euler_field(point);
  Real worst = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        Complex r = -Complex(Rational(3) - dim) * third[static_cast<std::size_t>(x)](y, z);
        for (int m = 0; m < n; ++m) {
          if (a(m, x) != 0) r += Complex(a(m, x)) * third[static_cast<std::size_t>(m)](y, z);
          if (a(m, y) != 0) r += Complex(a(m, y)) * third[static_cast<std::size_t>(m)](x, z);
          if (a(m, z) != 0) r += Complex(a(m, z)) * third[static_cast<std::size_t>(m)](x, y);
          Expression fourth = model.third_derivative(x, y, z).diff(m);
          if (!fourth.is_zero()) r += e[static_cast<std::size_t>(m)] * fourth.evaluate(point);
        }
        worst = max_abs(r, worst);
      }
  // L_E g = (2 - D) g and [E, 1] = -1.
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      Rational r = -(Rational(2) - dim) * model.metric()(x, y);
      for (int m = 0; m < n; ++m) r += a(m, x) * model.metric()(m, y) + a(m, y) * model.metric()(x, m);
      worst = max_abs(Complex(r), worst);
    }
    Rational unit = a(x, model.unit_index()) - (x == model.unit_index() ? 1 : 0);
    worst = max_abs(Complex(unit), worst);
  }
  return worst;
}

namespace models {

namespace {

Expression monomial(int n, const Rational& c, std::vector<Rational> mono) {
  ExprTerm t{c, {}, std::move(mono), std::vector<Rational>(static_cast<std::size_t>(n))};
  return Expression::from_terms(n, {t});
}

}  // namespace

FrobeniusModel point() {
  Matrix<Rational> g(1, 1, Rational(1));
  Expression f = monomial(1, Rational(1, 6), {Rational(3)});
  Matrix<Rational> a(1, 1, Rational(1));
  return FrobeniusModel(g, f, 0, EulerData{a, {Rational(0)}, Rational(0)}, "pt");
}

FrobeniusModel two_primary(const Rational& d, const Rational& c) {
  Matrix<Rational> g(2, 2, Rational(0));
  g(0, 1) = 1;
  g(1, 0) = 1;
  Expression f = monomial(2, Rational(1, 2), {Rational(2), Rational(1)});
  Matrix<Rational> a(2, 2, Rational(0));
  a(0, 0) = 1;
  std::vector<Rational> shift{Rational(0), Rational(0)};
  if (d == 1) {
    ExprTerm t{c, {}, {Rational(0), Rational(0)}, {Rational(0), Rational(1)}};
    f += Expression::from_terms(2, {t});
    shift[1] = 2;
  } else {
    // Homogeneity of degree 3 - d with deg t0 = 1 and deg t1 = 1 - d.
    Rational m = (Rational(3) - d) / (Rational(1) - d);
    if (m == 0 || m == 1 || m == 2) throw ValidationError("conformal dimension gives a degenerate two-primary potential");
    f += monomial(2, c, {Rational(0), m});
    a(1, 1) = Rational(1) - d;
  }
  return FrobeniusModel(g, f, 0, EulerData{a, shift, d}, "two_primary");
}

FrobeniusModel a3() {
  Matrix<Rational> g(3, 3, Rational(0));
  g(0, 2) = g(2, 0) = g(1, 1) = 1;
  Expression f = monomial(3, Rational(1, 2), {Rational(2), Rational(0), Rational(1)}) +
                 monomial(3, Rational(1, 2), {Rational(1), Rational(2), Rational(0)}) +
                 monomial(3, Rational(1, 4), {Rational(0), Rational(2), Rational(2)}) +
                 monomial(3, Rational(1, 60), {Rational(0), Rational(0), Rational(5)});
  Matrix<Rational> a(3, 3, Rational(0));
  a(0, 0) = 1;
  a(1, 1) = Rational(3, 4);
  a(2, 2) = Rational(1, 2);
  return FrobeniusModel(g, f, 0, EulerData{a, {Rational(0), Rational(0), Rational(0)}, Rational(1, 2)}, "a3");
}

}  // namespace models

}  // namespace hgf
