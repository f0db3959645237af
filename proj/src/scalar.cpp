#include "hgfrob/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace hgf {

namespace {

NumericContext& mutable_context() {
  thread_local NumericContext ctx{256, Real(0)};
  thread_local bool initialised = false;
  if (!initialised) {
    initialised = true;
    Real::default_precision(static_cast<unsigned>(decimal_digits(256) + 1));
    ctx.tolerance = default_tolerance(256);
  }
  return ctx;
}

// Main-thread Reals built before the first context query must already
// carry the working precision.
[[maybe_unused]] const bool precision_ready = (mutable_context(), true);

}  // namespace

Complex::Complex(const Rational& q) : re_(to_real(q)), im_(0) {}

Complex& Complex::operator*=(const Complex& o) {
  Real re = re_ * o.re_ - im_ * o.im_;
  Real im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  Real den = o.re_ * o.re_ + o.im_ * o.im_;
  if (den == 0) throw NumericalError("complex division by zero");
  Real re = (re_ * o.re_ + im_ * o.im_) / den;
  Real im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Real abs(const Complex& z) {
  return boost::multiprecision::sqrt(z.real() * z.real() + z.imag() * z.imag());
}

Complex conj(const Complex& z) { return Complex(z.real(), -z.imag()); }

Complex sqrt(const Complex& z) {
  Real r = abs(z);
  if (r == 0) return Complex();
  Real re = boost::multiprecision::sqrt((r + z.real()) / 2);
  Real im = boost::multiprecision::sqrt((r - z.real()) / 2);
  if (z.imag() < 0) im = -im;
  return Complex(re, im);
}

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.real());
  return Complex(m * boost::multiprecision::cos(z.imag()), m * boost::multiprecision::sin(z.imag()));
}

Complex log(const Complex& z) {
  Real r = abs(z);
  if (r == 0) throw NumericalError("logarithm of zero");
  return Complex(boost::multiprecision::log(r), boost::multiprecision::atan2(z.imag(), z.real()));
}

Complex pow(const Complex& z, const Rational& p) {
  if (denominator(p) == 1) {
    Integer n = numerator(p);
    bool invert = n < 0;
    if (invert) n = -n;
    Complex result(1);
    Complex base = z;
    while (n > 0) {
      if ((n & 1) != 0) result *= base;
      n >>= 1;
      if (n > 0) base *= base;
    }
    if (invert) {
      if (abs(result) == 0) throw NumericalError("negative power of zero");
      return Complex(1) / result;
    }
    return result;
  }
  if (abs(z) == 0) {
    if (p > 0) return Complex();
    throw NumericalError("negative power of zero");
  }
  return exp(Complex(to_real(p)) * log(z));
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  if (text.empty()) throw ValidationError("empty number");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + raw + "'");
    return num / den;
  }
  // Decimal with optional exponent, converted exactly.
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  Integer mantissa = 0;
  long scale = 0;
  bool seen_digit = false;
  bool after_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (after_point) --scale;
      seen_digit = true;
    } else if (c == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw ValidationError("malformed number '" + raw + "'");
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw ValidationError("malformed number '" + raw + "'");
    std::string ex = text.substr(pos + 1);
    if (ex.empty()) throw ValidationError("malformed exponent in '" + raw + "'");
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(ex, &used);
    } catch (const std::exception&) {
      throw ValidationError("malformed exponent in '" + raw + "'");
    }
    if (used != ex.size()) throw ValidationError("malformed exponent in '" + raw + "'");
    scale += e;
  }
  Rational value(mantissa);
  Integer ten = 10;
  Integer factor = boost::multiprecision::pow(ten, static_cast<unsigned>(scale < 0 ? -scale : scale));
  if (scale < 0) {
    value /= Rational(factor);
  } else {
    value *= Rational(factor);
  }
  return negative ? Rational(-value) : value;
}

int decimal_digits(int bits) { return static_cast<int>(std::floor(bits * 0.30102999566398120)); }

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

std::string to_string(const Real& x, int digits) {
  if (digits < 0) digits = decimal_digits(numeric_context().precision_bits);
  return x.str(digits, std::ios_base::scientific);
}

std::string to_string(const Complex& z, int digits) {
  std::string s = to_string(z.real(), digits);
  std::string i = to_string(z.imag(), digits);
  if (i.empty() || i[0] != '-') i = "+" + i;
  return s + i + "i";
}

const NumericContext& numeric_context() { return mutable_context(); }

Real default_tolerance(int bits) {
  // 77 digits at 256 bits -> 1e-40.
  int exponent = static_cast<int>(std::floor(decimal_digits(bits) * 0.52));
  if (exponent < 4) exponent = 4;
  Real ten = 10;
  return boost::multiprecision::pow(ten, -exponent);
}

PrecisionScope::PrecisionScope(int bits) : PrecisionScope(bits, Real(0)) {}

PrecisionScope::PrecisionScope(int bits, const Real& tolerance)
    : saved_(mutable_context()), saved_digits_(Real::default_precision()) {
  if (bits < 32) throw ValidationError("precision must be at least 32 bits");
  Real::default_precision(static_cast<unsigned>(decimal_digits(bits) + 1));
  NumericContext& ctx = mutable_context();
  ctx.precision_bits = bits;
  ctx.tolerance = tolerance > 0 ? Real(tolerance) : default_tolerance(bits);
}

PrecisionScope::~PrecisionScope() {
  Real::default_precision(saved_digits_);
  mutable_context() = saved_;
}

Real ScalarTraits<Rational>::magnitude(const Rational& q) { return to_real(boost::multiprecision::abs(q)); }

Rational ScalarTraits<Rational>::exp(const Rational& x) {
  if (x == 0) return 1;
  throw ValidationError("exp of a nonzero rational is not exact");
}

Rational ScalarTraits<Rational>::log(const Rational& x) {
  if (x == 1) return 0;
  throw ValidationError("log of a rational other than 1 is not exact");
}

Rational ScalarTraits<Rational>::pow(const Rational& x, const Rational& p) {
  if (denominator(p) != 1) throw ValidationError("non-integer power is not exact over the rationals");
  Integer n = numerator(p);
  bool invert = n < 0;
  if (invert) n = -n;
  if (invert && x == 0) throw ValidationError("negative power of zero");
  Rational result = 1;
  Rational base = x;
  while (n > 0) {
    if ((n & 1) != 0) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return invert ? Rational(1 / result) : result;
}

}  // namespace hgf
