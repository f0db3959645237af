#include "doctest.h"
#include "hgfrob/descendent.hpp"

#include <random>

using namespace hgf;

namespace {

Complex c(double v) { return Complex(Real(v)); }
Complex q(long p, long d) { return Complex(Rational(p, d)); }

Real diff(const Complex& a, const Complex& b) { return abs(a - b); }

CurvePoint random_curve(std::mt19937& gen, int n, int kmax, const std::vector<Complex>& t0, long scale) {
  std::uniform_int_distribution<long> dist(-1000, 1000);
  CurvePoint tau(static_cast<std::size_t>(kmax + 1), std::vector<Complex>(static_cast<std::size_t>(n)));
  for (int k = 0; k <= kmax; ++k)
    for (int a = 0; a < n; ++a) tau[k][a] = Complex(Rational(dist(gen), 1000 * scale));
  for (int a = 0; a < n; ++a) tau[0][a] += t0[a];
  return tau;
}

// Central first difference of fn along one curve direction.
template <class Fn>
Complex fd(Fn fn, CurvePoint tau, int k, int a, const Real& h) {
  tau[k][a] += Complex(h);
  Complex p = fn(tau);
  tau[k][a] -= Complex(h * 2);
  Complex m = fn(tau);
  return (p - m) / Complex(h * 2);
}

const Real kH("1e-20");

}  // namespace

TEST_CASE("point calibration is exp(t/z)") {
  auto pt = models::point();
  auto cal = compute_calibration(pt, {Rational(0)}, 6);
  auto vals = calibration_values(cal, {q(3, 10)});
  Rational term = 1;
  for (int k = 0; k <= 6; ++k) {
    if (k > 0) term = term * Rational(3, 10) / k;
    Complex expected(term);
    CHECK(diff(vals[k](0, 0), expected) < Real("1e-60"));
  }
  CHECK(calibration_unitarity(cal, {c(0.8)}) < Real("1e-60"));
}

TEST_CASE("two-primary calibration") {
  auto m = models::two_primary(Rational(1, 2));
  auto cal = compute_calibration(m, {Rational(0), Rational(0)}, 5);
  std::vector<Complex> p{q(3, 10), q(7, 10)};
  auto vals = calibration_values(cal, p);
  // M_1 is the Hessian of F (vanishing at the base)
  CHECK(diff(vals[1](0, 0), p[1]) < Real("1e-60"));
  CHECK(diff(vals[1](0, 1), p[0]) < Real("1e-60"));
  CHECK(diff(vals[1](1, 1), Complex(Real(20)) * p[1] * p[1] * p[1]) < Real("1e-60"));
  CHECK(calibration_unitarity(cal, p) < Real("1e-50"));
  CHECK(calibration_unitarity(cal, {q(-11, 10), q(2, 3)}) < Real("1e-50"));
  // the exponential member integrates too
  auto e = models::two_primary(Rational(1));
  auto cal1 = compute_calibration(e, {Rational(0), Rational(0)}, 4);
  CHECK(calibration_unitarity(cal1, {q(1, 5), q(-1, 3)}) < Real("1e-50"));
}

TEST_CASE("critical point") {
  auto pt = models::point();
  auto cal = compute_calibration(pt, {Rational(0)}, 5);
  SUBCASE("no higher times") {
    auto cp = critical_point(pt, cal, {{q(2, 7)}});
    CHECK(cp.t[0] == q(2, 7));
  }
  SUBCASE("quadratic equation") {
    Complex t0 = q(1, 5), t2 = q(1, 10);
    auto cp = critical_point(pt, cal, {{t0}, {c(0)}, {t2}});
    // root of t0 + t2 t^2/2 - t near t0
    Complex root = (Complex(1) - sqrt(Complex(1) - Complex(2) * t2 * t0)) / t2;
    CHECK(diff(cp.t[0], root) < Real("1e-60"));
  }
}

TEST_CASE("genus zero point descendents") {
  auto pt = models::point();
  auto cal = compute_calibration(pt, {Rational(0)}, 9);
  Complex t0 = q(3, 10), t1 = q(1, 7);
  auto r = genus0_descendents(pt, cal, {{t0}});
  CHECK(diff(r.F0, t0 * t0 * t0 / Complex(6)) < Real("1e-60"));
  auto r1 = genus0_descendents(pt, cal, {{t0}, {t1}});
  CHECK(diff(r1.F0, t0 * t0 * t0 / (Complex(6) * (Complex(1) - t1))) < Real("1e-60"));
  // <tau_0^3 tau_2 ... >: F0 with t2 to first order has coefficient t0^4/24
  Complex e = q(1, 1000000000);
  auto r2 = genus0_descendents(pt, cal, {{t0}, {c(0)}, {e}});
  Complex slope = (r2.F0 - r.F0) / e;
  CHECK(diff(slope, t0 * t0 * t0 * t0 / Complex(24)) < Real("1e-8"));
}

TEST_CASE("genus zero equations") {
  std::mt19937 gen(7);
  struct Case {
    FrobeniusModel model;
    std::vector<Complex> t0;
    int kmax;
  };
  std::vector<Case> cases{{models::point(), {q(1, 5)}, 3}, {models::two_primary(Rational(1, 2)), {q(3, 10), q(7, 10)}, 2}};
  for (const auto& cs : cases) {
    const int n = cs.model.dimension();
    const int u = cs.model.unit_index();
    std::vector<Rational> base(static_cast<std::size_t>(n), Rational(0));
    auto cal = compute_calibration(cs.model, base, 2 * cs.kmax + 3);
    auto f0 = [&](const CurvePoint& t) { return genus0_descendents(cs.model, cal, t).F0; };
    for (int trial = 0; trial < 2; ++trial) {
      auto tau = random_curve(gen, n, cs.kmax, cs.t0, 10);
      auto r = genus0_descendents(cs.model, cal, tau);
      auto g = to_complex(cs.model.metric());
      // first derivatives agree with differences of F0
      for (int k = 0; k <= cs.kmax; ++k)
        for (int a = 0; a < n; ++a) CHECK(diff(fd(f0, tau, k, a, kH), r.first[k][a]) < Real("1e-30"));
      // string: dF/dt_0^1 = (t_0, t_0)/2 + sum t_{k+1} dF/dt_k
      Complex string_rhs;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) string_rhs += g(a, b) * tau[0][a] * tau[0][b] / Complex(2);
      for (int k = 0; k < cs.kmax; ++k)
        for (int a = 0; a < n; ++a) string_rhs += tau[k + 1][a] * r.first[k][a];
      CHECK(diff(fd(f0, tau, 0, u, kH), string_rhs) < Real("1e-28"));
      // dilaton: dF/dt_1^1 = sum t_k dF/dt_k - 2 F
      Complex dil = -Complex(2) * r.F0;
      for (int k = 0; k <= cs.kmax; ++k)
        for (int a = 0; a < n; ++a) dil += tau[k][a] * r.first[k][a];
      CHECK(diff(fd(f0, tau, 1, u, kH), dil) < Real("1e-28"));
      // second derivatives from differences of the first
      for (int m = 0; m <= cs.kmax; ++m)
        for (int a = 0; a < n; ++a) {
          auto first = [&](const CurvePoint& t) { return genus0_descendents(cs.model, cal, t).first[m][a]; };
          for (int l = 0; l <= cs.kmax; ++l)
            for (int b = 0; b < n; ++b) CHECK(diff(fd(first, tau, l, b, kH), r.second.at({m, l})(a, b)) < Real("1e-28"));
        }
      // TRR: d_{t_{k+1}^a} d_b d_c F = d_{t_k^a} d_mu F g^{mu nu} d_nu d_b d_c F (b, c primary)
      auto ginv = to_complex(cs.model.metric_inverse());
      for (int k = 0; k + 1 <= cs.kmax; ++k)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int cc = 0; cc < n; ++cc) {
              auto second = [&](int m, int l, int x, int y) {
                return [&, m, l, x, y](const CurvePoint& t) { return genus0_descendents(cs.model, cal, t).second.at({m, l})(x, y); };
              };
              Complex lhs = fd(second(0, 0, b, cc), tau, k + 1, a, kH);
              Complex rhs;
              for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu)
                  rhs += r.second.at({k, 0})(a, mu) * ginv(mu, nu) * fd(second(0, 0, nu, b), tau, 0, cc, kH);
              CHECK(diff(lhs, rhs) < Real("1e-28"));
            }
    }
  }
}

TEST_CASE("two-point correlators depend on tau only through t*") {
  auto m = models::two_primary(Rational(1, 2));
  auto cal = compute_calibration(m, {Rational(0), Rational(0)}, 7);
  CurvePoint a{{q(3, 10), q(7, 10)}, {q(1, 200), q(-1, 300)}, {q(1, 400), q(1, 500)}};
  auto ra = genus0_descendents(m, cal, a);
  // b: other higher times, t_0 chosen so that the critical point is the same
  CurvePoint b{{c(0), c(0)}, {q(-1, 600), q(1, 700)}, {q(1, 900), q(-1, 250)}};
  auto vals = calibration_values(cal, ra.t_star);
  auto ginv = to_complex(m.metric_inverse());
  std::vector<Complex> acc(2);
  for (int k = 1; k <= 2; ++k)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) acc[x] += vals[k](x, y) * b[k][y];
  for (int x = 0; x < 2; ++x) {
    b[0][x] = ra.t_star[x];
    for (int y = 0; y < 2; ++y) b[0][x] -= ginv(x, y) * acc[y];
  }
  auto rb = genus0_descendents(m, cal, b);
  CHECK(diff(ra.t_star[0], rb.t_star[0]) < Real("1e-60"));
  CHECK(diff(ra.t_star[1], rb.t_star[1]) < Real("1e-60"));
  for (const auto& [key, pa] : ra.second) {
    // independent check through differences of first derivatives
    auto first = [&](const CurvePoint& t) { return genus0_descendents(m, cal, t).first[key.first][1]; };
    CHECK(diff(fd(first, a, key.second, 0, kH), fd(first, b, key.second, 0, kH)) < Real("1e-28"));
    CHECK(diff(pa(1, 0), rb.second.at(key)(1, 0)) < Real("1e-60"));
  }
}

TEST_CASE("bold quantities") {
  auto m = models::two_primary(Rational(1, 2));
  auto cal = compute_calibration(m, {Rational(0), Rational(0)}, 5);
  SUBCASE("reduce to the primary data") {
    CurvePoint tau{{q(3, 10), q(7, 10)}, {c(0), c(0)}, {c(0), c(0)}};
    auto b = bold_quantities(m, cal, tau, 4);
    for (int i = 0; i < 2; ++i) {
      CHECK(diff(b.D[i], b.edges.delta[i]) < Real("1e-60"));
      CHECK(diff(b.sqrt_D[i], b.edges.sqrt_delta[i]) < Real("1e-60"));
      for (int k = 0; k <= 5; ++k) CHECK(diff(b.T[i][k], b.edges.T[i][k]) < Real("1e-55"));
    }
  }
  SUBCASE("closed form for D") {
    CurvePoint tau{{q(3, 10), q(7, 10)}, {q(1, 20), q(-1, 30)}, {q(1, 40), q(1, 50)}};
    auto b = bold_quantities(m, cal, tau, 4);
    CHECK(b.criticality_residual < Real("1e-60"));
    auto vals = calibration_values(cal, b.t_star);
    auto jets = unit_jets(cal, tau, vals, b.t_star, 0, 1);
    auto ginv = to_complex(m.metric_inverse());
    for (int i = 0; i < 2; ++i) {
      Complex s;
      for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) s -= b.frame.du(mu, i) * ginv(mu, nu) * jets[1][nu];
      Complex expected = s / b.frame.sqrt_delta[i];
      CHECK(diff(Complex(1) / b.sqrt_D[i], expected) < Real("1e-55"));
      CHECK(b.T[i][0] == Complex(0));
      CHECK(b.T[i][1] == Complex(0));
    }
    // eigenvalues of [dt/dt_0]^{-1} are the bracketed factors: compare determinants
    auto jinv = inverse_jacobian(m, cal, tau, b.t_star);
    Complex prod(1);
    for (int i = 0; i < 2; ++i) prod = prod * b.frame.sqrt_delta[i] / b.sqrt_D[i];
    CHECK(diff(determinant(jinv), prod) < Real("1e-55"));
    // and the inverse of dt*/dt_0 obtained by differences
    Matrix<Complex> jac(2, 2, Complex(0));
    for (int a = 0; a < 2; ++a)
      for (int bb = 0; bb < 2; ++bb)
        jac(a, bb) = fd([&](const CurvePoint& t) { return critical_point(m, cal, t).t[a]; }, tau, 0, bb, kH);
    auto prodm = jac * jinv;
    CHECK(diff(prodm(0, 0), c(1)) < Real("1e-30"));
    CHECK(diff(prodm(0, 1), c(0)) < Real("1e-30"));
    CHECK(diff(prodm(1, 0), c(0)) < Real("1e-30"));
    CHECK(diff(prodm(1, 1), c(1)) < Real("1e-30"));
  }
  SUBCASE("point model") {
    auto pt = models::point();
    auto calp = compute_calibration(pt, {Rational(0)}, 5);
    Complex t0 = q(1, 7), t1 = q(1, 11), t2 = q(-1, 13), t3 = q(1, 17);
    CurvePoint tau{{t0}, {t1}, {t2}, {t3}};
    auto b = bold_quantities(pt, calp, tau, 4);
    Complex t = b.t_star[0];
    // f' = t1 + t2 t + t3 t^2/2 - 1, f'' = t2 + t3 t, f''' = t3
    Complex f1 = t1 + t2 * t + t3 * t * t / Complex(2) - Complex(1);
    CHECK(diff(Complex(1) / b.sqrt_D[0], -f1) < Real("1e-60"));
    CHECK(diff(b.T[0][2], (t2 + t3 * t) * b.sqrt_D[0]) < Real("1e-60"));
    CHECK(diff(b.T[0][3], t3 * b.sqrt_D[0]) < Real("1e-60"));
    CHECK(diff(b.T[0][4], c(0)) < Real("1e-60"));
  }
}

TEST_CASE("descendent potential reduces to F^g") {
  auto m = models::two_primary(Rational(1, 2));
  auto cal = compute_calibration(m, {Rational(0), Rational(0)}, 3);
  std::vector<Complex> p{q(3, 10), q(7, 10)};
  CurvePoint tau{p, {c(0), c(0)}};
  auto d = descendent_potential(m, cal, tau, 2);
  auto f = genus_potential(m, p, 2);
  CHECK(diff(d.value, f.value) < Real("1e-55") * abs(f.value));
}

TEST_CASE("point descendent potential matches intersection sum") {
  auto pt = models::point();
  auto cal = compute_calibration(pt, {Rational(0)}, 5);
  std::mt19937 gen(11);
  for (int trial = 0; trial < 3; ++trial) {
    auto tau = random_curve(gen, 1, 5, {c(0)}, 10);
    auto d = descendent_potential(pt, cal, tau, 2);
    auto direct = pt_descendent_direct(2, tau, Real("1e-32"));
    CHECK(diff(d.value, direct) <= Real("1e-25") * abs(direct));
  }
}

TEST_CASE("genus one descendent differential, two expressions") {
  for (auto d : {Rational(1, 2), Rational(1)}) {
    auto m = models::two_primary(d);
    auto cal = compute_calibration(m, {Rational(0), Rational(0)}, 3);
    CurvePoint tau{{q(3, 10), q(7, 10)}, {q(1, 20), q(-1, 30)}, {q(1, 40), q(1, 50)}};
    auto a = genus1_descendent_bold(m, cal, tau, kH);
    auto b = genus1_descendent_det(m, cal, tau, kH);
    REQUIRE(a.size() == 6);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(diff(a[k], b[k]) < Real("1e-30"));
  }
}

TEST_CASE("descendent potential symmetry") {
  auto m = models::two_primary(Rational(1, 2));
  auto cal = compute_calibration(m, {Rational(0), Rational(0)}, 3);
  CurvePoint tau{{q(3, 10), q(7, 10)}, {q(1, 20), q(-1, 30)}, {q(1, 40), q(1, 50)}};
  auto base = descendent_potential(m, cal, tau, 2).value;
  GenusOptions perm;
  perm.frame.permutation = {1, 0};
  GenusOptions flip;
  flip.frame.flip = {true, false};
  CHECK(diff(descendent_potential(m, cal, tau, 2, perm).value, base) < Real("1e-55") * abs(base));
  CHECK(diff(descendent_potential(m, cal, tau, 2, flip).value, base) < Real("1e-55") * abs(base));
}
