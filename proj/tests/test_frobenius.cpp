#include "doctest.h"
#include "hgfrob/frobenius.hpp"

using namespace hgf;

namespace {

std::vector<Complex> pt2(const char* a, const char* b) { return {Complex(Real(a)), Complex(Real(b))}; }

}  // namespace

TEST_CASE("structure constants of the point") {
  auto m = models::point();
  auto c = structure_constants(m, {Complex(Real("0.3"))});
  CHECK(nearly_equal(c[0](0, 0), Complex(1)));
  CHECK(check_wdvv(m, {Complex(Real("0.3"))}) == 0);
  CHECK(euler_residual(m, {Complex(Real("0.7"))}) == 0);
}

TEST_CASE("two primaries with exponential term") {
  auto m = models::two_primary(Rational(1));
  auto c = structure_constants(m, pt2("0", "0"));
  // C_1 = [[0,1],[1,0]] with F_{001} = 1 and F_{111} = e^0 = 1
  CHECK(nearly_equal(c[1](0, 0), Complex(0)));
  CHECK(nearly_equal(c[1](0, 1), Complex(1)));
  CHECK(nearly_equal(c[1](1, 0), Complex(1)));
  CHECK(nearly_equal(c[1](1, 1), Complex(0)));
  CHECK(nearly_equal(c[0](0, 0), Complex(1)));
  CHECK(nearly_equal(c[0](1, 1), Complex(1)));
  CHECK(nearly_equal(c[0](0, 1), Complex(0)));
  CHECK(euler_residual(m, pt2("0.2", "-0.4")) < Real("1e-60"));
}

TEST_CASE("two-primary family is homogeneous and satisfies the axioms") {
  for (Rational d : {Rational(1, 3), Rational(1, 2), Rational(3, 2), Rational(5, 3), Rational(1)}) {
    auto m = models::two_primary(d);
    auto p = pt2("0.31", "1.27");
    CHECK(check_wdvv(m, p) < Real("1e-60"));
    CHECK(unit_residual(m, p) < Real("1e-60"));
    CHECK(euler_residual(m, p) < Real("1e-60"));
    auto c = structure_constants(m, p);
    CHECK(max_abs(c[0] * c[1] - c[1] * c[0]) < Real("1e-60"));
  }
}

TEST_CASE("wrong conformal dimension breaks homogeneity") {
  auto m = models::two_primary(Rational(1, 2));
  auto eu = *m.euler();
  eu.conformal_dimension = Rational(1, 3);
  FrobeniusModel broken(m.metric(), m.potential(), 0, eu);
  CHECK(euler_residual(broken, pt2("0.31", "1.27")) > Real("1e-3"));
}

TEST_CASE("three primaries") {
  auto m = models::a3();
  std::vector<Complex> p{Complex(Real("0.1")), Complex(Real("0.7")), Complex(Real("-0.9"))};
  CHECK(check_wdvv(m, p) < Real("1e-60"));
  CHECK(unit_residual(m, p) < Real("1e-60"));
  CHECK(euler_residual(m, p) < Real("1e-60"));
  // A perturbed cubic term breaks associativity.
  ExprTerm t{Rational(1, 7), {}, {Rational(0), Rational(3), Rational(1)}, {Rational(0), Rational(0), Rational(0)}};
  FrobeniusModel broken(m.metric(), m.potential() + Expression::from_terms(3, {t}), 0);
  CHECK(check_wdvv(broken, p) > Real("1e-3"));
  auto c = structure_constants(m, p);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(max_abs(c[a] * c[b] - c[b] * c[a]) < Real("1e-60"));
  // Frobenius property: g C_a is symmetric.
  Matrix<Complex> g = to_complex(m.metric());
  for (int a = 0; a < 3; ++a) {
    auto gc = g * c[a];
    CHECK(max_abs(gc - gc.transpose()) < Real("1e-60"));
  }
}

TEST_CASE("validation") {
  Matrix<Rational> g(2, 2, Rational(0));
  g(0, 1) = 1;
  CHECK_THROWS_AS(FrobeniusModel(g, Expression(2)), ValidationError);
  Matrix<Rational> z(2, 2, Rational(0));
  CHECK_THROWS_AS(FrobeniusModel(z, Expression(2)), ValidationError);
}
