#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "hgfrob/linalg.hpp"
#include "hgfrob/series.hpp"

using namespace hgf;

namespace {

RationalSeries random_series(const SpacePtr& space, std::mt19937& rng, bool unit) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  RationalSeries s(space);
  const int n = space->size();
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  // Walk all admissible exponents.
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      Exponents ex(e.begin(), e.end());
      if (space->admits(ex)) s.add_term(ex, Rational(num(rng), den(rng)));
      return;
    }
    for (int k = 0; k <= space->caps()[static_cast<std::size_t>(v)]; ++k) {
      e[static_cast<std::size_t>(v)] = k;
      rec(v + 1);
    }
  };
  rec(0);
  if (unit) {
    Exponents zero(static_cast<std::size_t>(n), 0);
    s.add_term(zero, Rational(1) + Rational(1) - s.coefficient(zero));
  }
  return s;
}

}  // namespace

TEST_CASE("exp and log are inverse") {
  auto sp = SeriesSpace::make({"z"}, {6});
  auto z = RationalSeries::variable(sp, 0);
  auto one = RationalSeries::constant(sp, Rational(1));
  auto back = (one + z).log().exp();
  CHECK((back - one - z).is_zero());
}

TEST_CASE("geometric series inverts 1+z") {
  auto sp = SeriesSpace::make({"z"}, {8});
  auto z = RationalSeries::variable(sp, 0);
  RationalSeries geo(sp);
  for (int k = 0; k <= 8; ++k) geo.add_term(Exponents{static_cast<std::uint8_t>(k)}, Rational(k % 2 == 0 ? 1 : -1));
  auto prod = (RationalSeries::constant(sp, Rational(1)) + z) * geo;
  CHECK((prod - RationalSeries::constant(sp, Rational(1))).is_zero());
  CHECK(((RationalSeries::constant(sp, Rational(1)) + z).inverse() - geo).is_zero());
}

TEST_CASE("sign substitution z -> -z") {
  auto sp = SeriesSpace::make({"z"}, {2});
  RationalSeries r(sp);
  r.add_term({0}, Rational(1));
  r.add_term({1}, Rational(3, 7));
  r.add_term({2}, Rational(-2, 5));
  auto flipped = r.scale_variable(0, Rational(-1));
  CHECK(flipped.coefficient({1}) == Rational(-3, 7));
  CHECK(flipped.coefficient({2}) == Rational(-2, 5));
  auto viasub = r.substitute(0, -RationalSeries::variable(sp, 0));
  CHECK((viasub - flipped).is_zero());
}

TEST_CASE("singular quotient examples") {
  auto sp = SeriesSpace::total_degree({"z", "w"}, 6);
  auto z = RationalSeries::variable(sp, 0);
  auto w = RationalSeries::variable(sp, 1);
  SUBCASE("difference of squares") {
    auto q = singular_quotient(z * z - w * w, 0, 1);
    CHECK((q - (z - w)).is_zero());
  }
  SUBCASE("zero numerator") { CHECK(singular_quotient(RationalSeries(sp), 0, 1).is_zero()); }
  SUBCASE("exponential quotient") {
    Rational a(2, 3);
    auto s = (z + w) * a;
    auto num = s.exp() - RationalSeries::constant(sp, Rational(1));
    auto q = singular_quotient(num, 0, 1);
    // a + a^2 (z+w)/2 + a^3 (z+w)^2/6 + ... expanded by hand, up to degree 5.
    RationalSeries expect(sp);
    RationalSeries zw = RationalSeries::constant(sp, Rational(1));
    Rational fact = 1;
    for (int n = 0; n <= 5; ++n) {
      fact *= Rational(n + 1);
      Rational coef = 1;
      for (int k = 0; k <= n; ++k) coef *= a;
      expect += zw * (coef / fact);
      zw = zw * (z + w);
    }
    CHECK((q - expect).is_zero());
  }
  SUBCASE("non-divisible numerator is rejected") { CHECK_THROWS_AS(singular_quotient(z * z + w * w, 0, 1), NumericalError); }
}

TEST_CASE("random property checks") {
  std::mt19937 rng(1234);
  auto sp = SeriesSpace::make({"x", "y"}, {4, 3}, {WeightedCap{{1, 1}, 5}});
  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_series(sp, rng, false);
    auto b = random_series(sp, rng, true);
    auto c = random_series(sp, rng, false);
    CHECK(((a * b).divided_by(b) - a).is_zero());
    CHECK(((a * b) * c - a * (b * c)).is_zero());
    CHECK((a * b - b * a).is_zero());
    CHECK((a * (b + c) - (a * b + a * c)).is_zero());
  }
  auto zw = SeriesSpace::total_degree({"z", "w"}, 6);
  for (int trial = 0; trial < 5; ++trial) {
    auto x = random_series(zw, rng, false);
    auto sum = RationalSeries::variable(zw, 0) + RationalSeries::variable(zw, 1);
    auto q = singular_quotient(x * sum, 0, 1);
    // Only degrees below the cap are recoverable.
    auto low = SeriesSpace::total_degree({"z", "w"}, 5);
    CHECK((q.truncated(low) - x.truncated(low)).is_zero());
  }
}

TEST_CASE("truncation mismatch is an error") {
  auto a = RationalSeries::variable(SeriesSpace::make({"z"}, {3}), 0);
  auto b = RationalSeries::variable(SeriesSpace::make({"z"}, {4}), 0);
  CHECK_THROWS_AS(a * b, ValidationError);
  CHECK_THROWS_AS(RationalSeries::variable(SeriesSpace::make({"z"}, {3}), 0).log(), NumericalError);
}

TEST_CASE("complex backend") {
  auto sp = SeriesSpace::make({"z"}, {10});
  auto z = ComplexSeries::variable(sp, 0);
  auto e = (z * Complex(Real(0), Real(1))).exp();
  // exp(i z) has coefficients i^n/n!
  CHECK(nearly_equal(e.coefficient({3}), Complex(Real(0), Real(-1) / 6)));
  auto s = (ComplexSeries::constant(sp, Complex(4)) + z).pow(Rational(1, 2));
  CHECK(nearly_equal((s * s).coefficient({1}), Complex(1)));
  CHECK(nearly_equal(s.constant_term(), Complex(2)));
}

TEST_CASE("polynomial roots") {
  // (x-1)(x-2)(x+3)
  std::vector<Complex> c{Complex(6), Complex(-7), Complex(0), Complex(1)};
  auto roots = polynomial_roots(c);
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) { return a.real() < b.real(); });
  CHECK(nearly_equal(roots[0], Complex(-3)));
  CHECK(nearly_equal(roots[1], Complex(1)));
  CHECK(nearly_equal(roots[2], Complex(2)));
  CHECK(parse_rational("1.25e-1") == Rational(1, 8));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
}
