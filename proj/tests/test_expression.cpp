#include "doctest.h"
#include "hgfrob/expression.hpp"

using namespace hgf;

namespace {

ExprTerm term(const Rational& c, std::vector<Rational> mono, std::vector<Rational> rate) {
  return ExprTerm{c, {}, std::move(mono), std::move(rate)};
}

}  // namespace

TEST_CASE("jet of t0^2 t1/2 + exp(t1) at the origin") {
  auto f = Expression::from_terms(2, {term(Rational(1, 2), {2, 1}, {0, 0}), term(1, {0, 0}, {0, 1})});
  Jet jet = evaluate_jet(f, {Complex(0), Complex(0)}, 3);
  CHECK(nearly_equal(jet.at({2, 1}), Complex(1)));
  CHECK(nearly_equal(jet.at({0, 3}), Complex(1)));
  CHECK(nearly_equal(jet.at({3, 0}), Complex(0)));
  CHECK(nearly_equal(jet.at({1, 2}), Complex(0)));
}

TEST_CASE("jet of t^3/6") {
  auto f = Expression::from_terms(1, {term(Rational(1, 6), {3}, {0})});
  Complex a(Real("0.375"));
  Jet jet = evaluate_jet(f, {a}, 3);
  CHECK(nearly_equal(jet.at({3}), Complex(1)));
  CHECK(nearly_equal(jet.at({2}), a));
}

TEST_CASE("bound parameter times exponential") {
  ExprTerm t{Rational(1), {{"q", 1}}, {Rational(0), Rational(0)}, {Rational(0), Rational(1)}};
  auto f = Expression::from_terms(2, {t});
  CHECK_THROWS_AS(evaluate_jet(f, {Complex(0), Complex(0)}, 2), ValidationError);
  auto bound = f.bind({{"q", Rational(1, 4)}});
  Jet jet = evaluate_jet(bound, {Complex(0), Complex(0)}, 2);
  CHECK(nearly_equal(jet.at({0, 0}), Complex(Rational(1, 4))));
  CHECK(nearly_equal(jet.at({0, 1}), Complex(Rational(1, 4))));
  CHECK(nearly_equal(jet.at({0, 2}), Complex(Rational(1, 4))));
  CHECK(nearly_equal(jet.at({1, 1}), Complex(0)));
  CHECK_THROWS_AS(evaluate_jet(bound, {Complex(0)}, 2), ValidationError);
}

TEST_CASE("antiderivatives stay in the class") {
  auto f = Expression::from_terms(2, {term(3, {2, 1}, {0, 0}), term(Rational(1, 2), {0, 2}, {0, Rational(2, 3)}),
                                      term(5, {0, Rational(-3, 2)}, {0, 0})});
  for (int v = 0; v < 2; ++v) {
    CHECK(f.antidiff(v).diff(v) == f);
  }
  auto bad = Expression::from_terms(1, {term(1, {-1}, {0})});
  CHECK_THROWS_AS(bad.antidiff(0), ValidationError);
  auto bad2 = Expression::from_terms(1, {term(1, {Rational(1, 2)}, {1})});
  CHECK_THROWS_AS(bad2.antidiff(0), ValidationError);
}

TEST_CASE("fractional powers expand around nonzero points") {
  auto f = Expression::from_terms(1, {term(1, {Rational(-3)}, {0})});
  Jet jet = evaluate_jet(f, {Complex(2)}, 2);
  CHECK(nearly_equal(jet.at({0}), Complex(Rational(1, 8))));
  CHECK(nearly_equal(jet.at({1}), Complex(Rational(-3, 16))));
  CHECK(nearly_equal(jet.at({2}), Complex(Rational(12, 32))));
  CHECK(f.evaluate_exact({Rational(2)}) == Rational(1, 8));
}
