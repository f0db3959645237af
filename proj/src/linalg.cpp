#include "hgfrob/linalg.hpp"

#include <algorithm>

namespace hgf {

namespace {

template <class F>
Real magnitude(const F& x) {
  return ScalarTraits<F>::magnitude(x);
}

template <class F>
Matrix<F> inverse_impl(const Matrix<F>& m) {
  const int n = m.rows();
  if (n != m.cols()) throw ValidationError("inverse of a non-square matrix");
  Matrix<F> a = m;
  Matrix<F> inv = identity_matrix<F>(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    Real best = magnitude(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      Real v = magnitude(a(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (ScalarTraits<F>::is_zero(a(pivot, col))) throw NumericalError("singular matrix");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    F p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / p;
      inv(col, j) = inv(col, j) / p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || ScalarTraits<F>::is_zero(a(r, col))) continue;
      F f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

template <class F>
F determinant_impl(const Matrix<F>& m) {
  const int n = m.rows();
  if (n != m.cols()) throw ValidationError("determinant of a non-square matrix");
  Matrix<F> a = m;
  F det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    Real best = magnitude(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      Real v = magnitude(a(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (ScalarTraits<F>::is_zero(a(pivot, col))) return F(0);
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      F f = a(r, col) / a(col, col);
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

Complex eval_poly(const std::vector<Complex>& c, const Complex& x) {
  Complex acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * x + c[k];
  return acc;
}

}  // namespace

Matrix<Complex> to_complex(const Matrix<Rational>& m) {
  return m.map([](const Rational& q) { return Complex(q); });
}

Matrix<Rational> inverse(const Matrix<Rational>& m) { return inverse_impl(m); }
Matrix<Complex> inverse(const Matrix<Complex>& m) { return inverse_impl(m); }
Rational determinant(const Matrix<Rational>& m) { return determinant_impl(m); }
Complex determinant(const Matrix<Complex>& m) { return determinant_impl(m); }

std::vector<Complex> solve(const Matrix<Complex>& a, const std::vector<Complex>& b) {
  Matrix<Complex> inv = inverse(a);
  std::vector<Complex> x(b.size());
  for (int i = 0; i < inv.rows(); ++i) {
    Complex acc;
    for (int j = 0; j < inv.cols(); ++j) acc += inv(i, j) * b[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = acc;
  }
  return x;
}

std::vector<Complex> characteristic_polynomial(const Matrix<Complex>& a) {
  // Faddeev-LeVerrier.
  const int n = a.rows();
  std::vector<Complex> c(static_cast<std::size_t>(n + 1));
  c[static_cast<std::size_t>(n)] = Complex(1);
  Matrix<Complex> m(n, n, Complex());
  Matrix<Complex> id = identity_matrix<Complex>(n);
  for (int k = 1; k <= n; ++k) {
    Matrix<Complex> next = a * m;
    for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    m = next;
    Matrix<Complex> am = a * m;
    Complex tr;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<std::size_t>(n - k)] = -tr / Complex(Real(k));
  }
  return c;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) return {};
  if (n == 1) return {-coeffs[0]};
  // Cauchy bound for the initial circle.
  Real bound = 0;
  for (int k = 0; k < n; ++k) {
    Real v = abs(coeffs[static_cast<std::size_t>(k)]);
    if (v > bound) bound = v;
  }
  bound += 1;
  std::vector<Complex> z(static_cast<std::size_t>(n));
  Complex seed(Real("0.4"), Real("0.9"));
  Complex p(1);
  for (int k = 0; k < n; ++k) {
    p *= seed;
    z[static_cast<std::size_t>(k)] = p * Complex(bound);
  }
  const Real& tol = numeric_context().tolerance;
  Real eps = tol * tol;
  for (int iter = 0; iter < 2000; ++iter) {
    Real change = 0;
    for (int i = 0; i < n; ++i) {
      Complex den(1);
      for (int j = 0; j < n; ++j)
        if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      if (abs(den) == 0) den = Complex(eps);
      Complex step = eval_poly(coeffs, z[static_cast<std::size_t>(i)]) / den;
      z[static_cast<std::size_t>(i)] -= step;
      Real s = abs(step);
      if (s > change) change = s;
    }
    if (change <= eps * bound) break;
  }
  // Newton polish on the polynomial itself.
  std::vector<Complex> deriv;
  for (int k = 1; k <= n; ++k) deriv.push_back(coeffs[static_cast<std::size_t>(k)] * Complex(Real(k)));
  for (auto& r : z) {
    for (int iter = 0; iter < 8; ++iter) {
      Complex d = eval_poly(deriv, r);
      if (abs(d) == 0) break;
      r -= eval_poly(coeffs, r) / d;
    }
  }
  return z;
}

Real max_abs(const Matrix<Complex>& m) {
  Real best = 0;
  for (const auto& x : m.data()) {
    Real v = abs(x);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace hgf
