#include "doctest.h"
#include "hgfrob/rmatrix.hpp"

#include <random>

using namespace hgf;

namespace {

std::vector<Complex> pt2(const Real& a, const Real& b) { return {Complex(a), Complex(b)}; }

Real tiny() { return Real("1e-50"); }

std::vector<std::vector<Complex>> sample_points(int count, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> num(-400, 400);
  std::uniform_int_distribution<int> pos(300, 1500);
  std::vector<std::vector<Complex>> out;
  for (int i = 0; i < count; ++i) out.push_back(pt2(Real(num(gen)) / 1000, Real(pos(gen)) / 1000));
  return out;
}

const std::vector<Rational>& family() {
  static const std::vector<Rational> d = {Rational(1, 3), Rational(1, 2), Rational(1), Rational(3, 2), Rational(5, 3)};
  return d;
}

}  // namespace

TEST_CASE("point model has trivial R, V and T") {
  auto m = models::point();
  auto f = canonical_frame(m, {Complex(Real("0.3"))}, 5);
  auto r = compute_R(m, f, 5);
  for (int k = 1; k <= 5; ++k) CHECK(abs(r.R[static_cast<std::size_t>(k)](0, 0)) < tiny());
  auto d = edge_tail_data(r, f);
  for (const auto& [key, v] : d.V) CHECK(abs(v) < tiny());
  for (const auto& t : d.T[0]) CHECK(abs(t) < tiny());
}

TEST_CASE("unitarity and cross-direction consistency on the two-primary family") {
  for (const auto& d : family()) {
    auto m = models::two_primary(d);
    for (const auto& p : sample_points(3, 7)) {
      auto f = canonical_frame(m, p, 6);
      auto r = compute_R(m, f, 6);
      CHECK(unitarity_residual(r) < Real("1e-40"));
      CHECK(r.consistency_residual < Real("1e-40"));
      // R_1 symmetric
      CHECK(abs(r.R[1](0, 1) - r.R[1](1, 0)) < Real("1e-40"));
    }
  }
}

TEST_CASE("three-primary model is unitary") {
  auto m = models::a3();
  std::vector<Complex> p = {Complex(Real("0.1")), Complex(Real("0.4")), Complex(Real("0.7"))};
  auto f = canonical_frame(m, p, 4);
  auto r = compute_R(m, f, 4);
  CHECK(unitarity_residual(r) < Real("1e-40"));
  CHECK(r.consistency_residual < Real("1e-40"));
}

TEST_CASE("twist and untwist") {
  auto m = models::two_primary(Rational(1, 2));
  auto f = canonical_frame(m, pt2(Real("0.2"), Real("0.9")), 5);
  auto r = compute_R(m, f, 5);
  TwistConstants a = {{Complex(Real("0.3")), Complex(Real("-1.1"))}, {Complex(Real("0.7")), Complex(Real("0.05"))},
                      {Complex(Real("2")), Complex(Real("-0.4"))}};
  TwistConstants neg = a;
  for (auto& row : neg)
    for (auto& x : row) x = -x;
  auto t = twist_R(r, a);
  CHECK(unitarity_residual(t) < Real("1e-40"));
  auto back = twist_R(t, neg);
  for (int k = 0; k <= 5; ++k) CHECK(max_abs(back.R[static_cast<std::size_t>(k)] - r.R[static_cast<std::size_t>(k)]) < tiny());
  auto zero = twist_R(r, {{Complex(), Complex()}});
  for (int k = 0; k <= 5; ++k) CHECK(max_abs(zero.R[static_cast<std::size_t>(k)] - r.R[static_cast<std::size_t>(k)]) < tiny());
}

TEST_CASE("scalar twist is the exponential") {
  RSeries one;
  one.K = 3;
  for (int k = 0; k <= 3; ++k) one.R.push_back(Matrix<Complex>(1, 1, Complex(k == 0 ? 1 : 0)));
  Complex a(Real("0.7"));
  auto t = twist_R(one, {{a}});
  CHECK(nearly_equal(t.R[1](0, 0), a));
  CHECK(nearly_equal(t.R[2](0, 0), a * a / Complex(2)));
  CHECK(nearly_equal(t.R[3](0, 0), a * a * a / Complex(6)));
}

TEST_CASE("constants mode reproduces the conformal solution") {
  auto m = models::two_primary(Rational(5, 3));
  auto f = canonical_frame(m, pt2(Real("-0.1"), Real("0.8")), 4);
  auto conf = compute_R(m, f, 4);
  // R_conf = R_ref exp(a_1 z + a_2 z^3); read a_1 off R_1, a_2 off R_3.
  auto ref = compute_R(m, f, 4, {RMode::constants, {}});
  CHECK(unitarity_residual(ref) < Real("1e-40"));
  CHECK(ref.consistency_residual < Real("1e-40"));
  TwistConstants a(2, std::vector<Complex>(2));
  for (int i = 0; i < 2; ++i) a[0][static_cast<std::size_t>(i)] = conf.R[1](i, i);
  auto partial = twist_R(ref, a);
  for (int i = 0; i < 2; ++i) a[1][static_cast<std::size_t>(i)] = conf.R[3](i, i) - partial.R[3](i, i);
  auto full = compute_R(m, f, 4, {RMode::constants, a});
  for (int k = 0; k <= 4; ++k) CHECK(max_abs(full.R[static_cast<std::size_t>(k)] - conf.R[static_cast<std::size_t>(k)]) < Real("1e-40"));
}

TEST_CASE("Bernoulli numbers and compensating constants") {
  auto b = bernoulli_numbers(8);
  CHECK(b[1] == Rational(-1, 2));
  CHECK(b[2] == Rational(1, 6));
  CHECK(b[4] == Rational(-1, 30));
  CHECK(b[6] == Rational(1, 42));
  CHECK(b[3] == 0);
  auto a = bernoulli_constants({{Rational(3)}, {Rational(1), Rational(-1)}, {Rational(1)}}, 2);
  CHECK(a[0][0] == Rational(-1, 36));
  CHECK(a[0][1] == 0);
  CHECK(a[0][2] == Rational(-1, 12));
  CHECK(a[1][2] == Rational(1, 360));
  CHECK_THROWS_AS(bernoulli_constants({{Rational(0)}}, 1), ValidationError);
}

TEST_CASE("edge coefficients") {
  auto m = models::two_primary(Rational(3, 2));
  auto f = canonical_frame(m, pt2(Real("0.25"), Real("0.6")), 5);
  auto r = compute_R(m, f, 5);
  auto d = edge_tail_data(r, f);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(nearly_equal(d.v(i, j, 0, 0), r.R[1](i, j)));
      for (int k = 0; k <= 4; ++k)
        for (int l = 0; k + l <= 4; ++l) CHECK(abs(d.v(i, j, k, l) - d.v(j, i, l, k)) < Real("1e-40"));
    }
  CHECK_THROWS_AS(d.v(0, 0, 3, 2), ValidationError);
  for (int i = 0; i < 2; ++i) {
    CHECK(abs(d.T[static_cast<std::size_t>(i)][0]) == 0);
    CHECK(abs(d.T[static_cast<std::size_t>(i)][1]) == 0);
    Complex t2;
    for (int j = 0; j < 2; ++j) t2 += r.R[1](i, j) / f.sqrt_delta[static_cast<std::size_t>(j)];
    t2 *= f.sqrt_delta[static_cast<std::size_t>(i)];
    CHECK(nearly_equal(d.T[static_cast<std::size_t>(i)][2], t2));
  }
  CHECK(d.t_residual < tiny());
}

TEST_CASE("identity R gives vanishing edges and tails") {
  auto m = models::two_primary(Rational(1, 2));
  auto f = canonical_frame(m, pt2(Real("0.25"), Real("0.6")), 0);
  RSeries id;
  id.K = 3;
  for (int k = 0; k <= 3; ++k) id.R.push_back(k == 0 ? identity_matrix<Complex>(2) : Matrix<Complex>(2, 2, Complex()));
  auto d = edge_tail_data(id, f);
  for (const auto& [key, v] : d.V) CHECK(abs(v) == 0);
  for (const auto& row : d.T)
    for (const auto& t : row) CHECK(abs(t) == 0);
}

TEST_CASE("branch flips leave weighted edges and tails invariant") {
  auto m = models::two_primary(Rational(1, 3));
  auto p = pt2(Real("0.15"), Real("1.1"));
  auto f = canonical_frame(m, p, 4);
  FrameOptions opt;
  opt.flip = {false, true};
  auto g = canonical_frame(m, p, 4, opt);
  auto df = edge_tail_data(compute_R(m, f, 4), f);
  auto dg = edge_tail_data(compute_R(m, g, 4), g);
  for (const auto& [key, v] : df.V) {
    CHECK(abs(df.w(key[0], key[1], key[2], key[3]) - dg.w(key[0], key[1], key[2], key[3])) < Real("1e-40"));
  }
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k <= 5; ++k)
      CHECK(abs(df.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] - dg.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) <
            Real("1e-40"));
}

TEST_CASE("conformal homogeneity along the Euler flow") {
  // d = 1: (t0, t1) -> (l t0, t1 + 2 log l) scales u by l.
  auto m = models::two_primary(Rational(1));
  Real l("1.7");
  auto p = pt2(Real("0.3"), Real("0.2"));
  auto q = pt2(Real("0.3") * l, Real("0.2") + 2 * log(l));
  auto f = canonical_frame(m, p, 4);
  auto g = canonical_frame(m, q, 4);
  for (int i = 0; i < 2; ++i) CHECK(nearly_equal(g.u[static_cast<std::size_t>(i)], f.u[static_cast<std::size_t>(i)] * Complex(l)));
  auto rf = compute_R(m, f, 4);
  auto rg = compute_R(m, g, 4);
  Real scale = 1;
  for (int k = 1; k <= 4; ++k) {
    scale /= l;
    CHECK(max_abs(rg.R[static_cast<std::size_t>(k)] - scaled(rf.R[static_cast<std::size_t>(k)], Complex(scale))) < Real("1e-40"));
  }
}

TEST_CASE("frame order must cover K") {
  auto m = models::two_primary(Rational(1, 2));
  auto f = canonical_frame(m, pt2(Real("0.25"), Real("0.6")), 2);
  CHECK_THROWS_AS(compute_R(m, f, 3), ValidationError);
}
