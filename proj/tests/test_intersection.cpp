#include "doctest.h"
#include "hgfrob/intersection.hpp"

#include <functional>
#include <numeric>

using namespace hgf;

namespace {

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// All sorted index vectors of length n with the right dimension.
std::vector<std::vector<int>> keys(int g, int n) {
  std::vector<std::vector<int>> out;
  int dim = 3 * g - 3 + n;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int lo, int left) {
    if (static_cast<int>(cur.size()) == n) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int k = lo; k <= left; ++k) {
      cur.push_back(k);
      rec(k, left - k);
      cur.pop_back();
    }
  };
  if (dim >= 0) rec(0, dim);
  return out;
}

}  // namespace

TEST_CASE("spot values") {
  CHECK(psi_intersection(0, {0, 0, 0}) == 1);
  CHECK(psi_intersection(0, {0, 0, 0, 1}) == 1);
  CHECK(psi_intersection(0, {0, 0, 1}) == 0);
  CHECK(psi_intersection(1, {1}) == Rational(1, 24));
  CHECK(psi_intersection(1, {0, 2}) == Rational(1, 24));
  CHECK(psi_intersection(2, {4}) == Rational(1, 1152));
  CHECK(psi_intersection(2, {2, 3}) == Rational(29, 5760));
  CHECK(psi_intersection(2, {2, 2, 2}) == Rational(7, 240));
  CHECK(psi_intersection(3, {7}) == Rational(1, 82944));
  CHECK(psi_intersection(2, {3}) == 0);  // dimension mismatch
}

TEST_CASE("closed forms") {
  // genus 0: (n-3)! / prod k_i!
  for (int n = 3; n <= 8; ++n)
    for (const auto& ks : keys(0, n)) {
      Rational expect = factorial(n - 3);
      for (int k : ks) expect /= factorial(k);
      CHECK(psi_intersection(0, ks) == expect);
    }
  // <tau_1^n>_1 = (n-1)!/24 and <tau_{3g-2}>_g = 1/(24^g g!)
  for (int n = 1; n <= 7; ++n) CHECK(psi_intersection(1, std::vector<int>(static_cast<std::size_t>(n), 1)) == factorial(n - 1) / 24);
  for (int g = 1; g <= 5; ++g) {
    Rational expect = 1 / factorial(g);
    for (int i = 0; i < g; ++i) expect /= 24;
    CHECK(psi_intersection(g, {3 * g - 2}) == expect);
  }
}

TEST_CASE("DVV-only table agrees and satisfies string and dilaton") {
  IntersectionTable dvv(IntersectionStrategy::dvv_only);
  for (int g = 0; g <= 3; ++g)
    for (int n = 1; n <= 7; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      for (const auto& ks : keys(g, n)) {
        Rational v = dvv(g, ks);
        CHECK(v == psi_intersection(g, ks));
        if (2 * g - 2 + n + 1 <= 0) continue;
        // string: <tau_0 tau_S> = sum_j <... tau_{k_j - 1} ...>
        auto s = ks;
        s.push_back(0);
        Rational rhs = 0;
        for (std::size_t j = 0; j < ks.size(); ++j) {
          if (ks[j] == 0) continue;
          auto r = s;
          --r[j];
          rhs += dvv(g, r);
        }
        CHECK(dvv(g, s) == rhs);
        auto d = ks;
        d.push_back(1);
        CHECK(dvv(g, d) == Rational(2 * g - 2 + n) * v);
      }
    }
}

TEST_CASE("unstable arguments") {
  CHECK_THROWS_AS(psi_intersection(0, {0, 0}), ValidationError);
  CHECK_THROWS_AS(psi_intersection(1, {}), ValidationError);
  CHECK_THROWS_AS(psi_intersection(1, {-1, 2}), ValidationError);
}

TEST_CASE("vertex correlators") {
  std::vector<Rational> none(8, Rational(0));
  CHECK(vertex_correlator(2, {}, none) == 0);
  CHECK(vertex_correlator(0, {0, 0, 0}, none) == 1);
  std::vector<Rational> t2 = none;
  t2[2] = Rational(3, 7);
  CHECK(vertex_correlator(1, {0}, t2) == Rational(3, 7) / 24);
  // unstable vertices give zero
  CHECK(vertex_correlator(0, {0, 0}, t2) == 0);
  CHECK(vertex_correlator(1, {}, t2) == 0);
  // genus 2, no edges: T_4 <tau_4> + T_2 T_3 <tau_2 tau_3> + T_2^3/6 <tau_2^3>
  std::vector<Rational> t = none;
  t[2] = Rational(1, 2);
  t[3] = Rational(-2, 3);
  t[4] = Rational(5);
  Rational expect = t[4] / 1152 + t[2] * t[3] * Rational(29, 5760) + t[2] * t[2] * t[2] / 6 * Rational(7, 240);
  CHECK(vertex_correlator(2, {}, t) == expect);
  std::vector<Complex> tc;
  for (const auto& x : t) tc.push_back(Complex(x));
  CHECK(nearly_equal(vertex_correlator(2, {}, tc), Complex(expect)));
  CHECK_THROWS_AS(vertex_correlator(2, {}, std::vector<Rational>(3)), ValidationError);
}
