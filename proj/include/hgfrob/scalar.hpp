#pragma once

// Numeric backends: exact rationals (GMP) and complex numbers over
// variable-precision MPFR floats.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace hgf {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: schema violations, bad dimensions, unbound parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Residual breaches, non-convergence, degenerate numerics.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class Complex {
 public:
  Complex() : re_(0), im_(0) {}
  Complex(int v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real re) : re_(std::move(re)), im_(0) {}  // NOLINT
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(const Rational& q);

  const Real& real() const { return re_; }
  const Real& imag() const { return im_; }

  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re_, -a.im_); }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Real re_;
  Real im_;
};

Real abs(const Complex& z);
Complex conj(const Complex& z);
Complex sqrt(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex pow(const Complex& z, const Rational& p);

Real to_real(const Rational& q);
Rational parse_rational(const std::string& text);

// Decimal digits carried by a binary precision (floor(bits * log10 2)).
int decimal_digits(int bits);

std::string to_string(const Rational& q);
std::string to_string(const Real& x, int digits = -1);
std::string to_string(const Complex& z, int digits = -1);

// Working precision and comparison tolerance for the float backend. Values
// created under one context must not be mixed with another.
struct NumericContext {
  int precision_bits = 256;
  Real tolerance;
};

const NumericContext& numeric_context();

// Relative tolerance default scaled to the precision: 1e-40 at 256 bits.
Real default_tolerance(int bits);

class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  PrecisionScope(int bits, const Real& tolerance);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  NumericContext saved_;
  unsigned saved_digits_;
};

template <class F>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static Real magnitude(const Rational& q);
  static bool is_zero(const Rational& q) { return q == 0; }
  static Rational exp(const Rational& x);
  static Rational log(const Rational& x);
  static Rational pow(const Rational& x, const Rational& p);
  static std::string format(const Rational& q) { return to_string(q); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex from_rational(const Rational& q) { return Complex(q); }
  static Real magnitude(const Complex& z) { return abs(z); }
  static bool is_zero(const Complex& z) { return z.real() == 0 && z.imag() == 0; }
  static Complex exp(const Complex& x) { return hgf::exp(x); }
  static Complex log(const Complex& x) { return hgf::log(x); }
  static Complex pow(const Complex& x, const Rational& p) { return hgf::pow(x, p); }
  static std::string format(const Complex& z) { return to_string(z); }
};

// Exact equality for rationals; |a-b| <= tol * max(1, |a|, |b|) for floats.
template <class F>
bool nearly_equal(const F& a, const F& b) {
  if constexpr (ScalarTraits<F>::exact) {
    return a == b;
  } else {
    Real scale = ScalarTraits<F>::magnitude(a);
    Real sb = ScalarTraits<F>::magnitude(b);
    if (sb > scale) scale = sb;
    if (scale < 1) scale = 1;
    return ScalarTraits<F>::magnitude(a - b) <= numeric_context().tolerance * scale;
  }
}

}  // namespace hgf
