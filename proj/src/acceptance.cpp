#include "hgfrob/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "hgfrob/descendent.hpp"
#include "hgfrob/hodge.hpp"
#include "hgfrob/intersection.hpp"

namespace hgf {

namespace {

using Clock = std::chrono::steady_clock;

std::string sci(const Real& x) { return x.str(3, std::ios_base::scientific); }

Complex cq(long p, long q) { return Complex(Rational(p, q)); }

struct Check {
  bool ok = true;
  std::ostringstream notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) notes << "; ";
      ok = false;
      notes << what;
    }
  }
};

const std::vector<Rational>& family() {
  static const std::vector<Rational> ds{Rational(1, 3), Rational(1, 2), Rational(1), Rational(3, 2), Rational(5, 3)};
  return ds;
}

std::vector<std::vector<Complex>> family_points() {
  return {{cq(3, 10), cq(7, 10)}, {cq(-1, 5), cq(13, 10)}, {cq(11, 10), cq(9, 20)},
          {cq(1, 20), cq(21, 10)}, {cq(2, 3), cq(9, 10)}};
}

// F^2 (u+ - u-)^3 / Delta_-: constant along the family.
Complex scaled_f2(const FrobeniusModel& m, const std::vector<Complex>& p, const Complex& f2) {
  auto frame = canonical_frame(m, p);
  Complex du = frame.u[1] - frame.u[0];
  return f2 * du * du * du / frame.delta[0];
}

Rational closed_form(const Rational& d) { return d * (3 * d - 1) * (d - 1) * (d - 1) * (3 * d - 5) * (d - 2) / 2880; }

// Genus-2 values at the sample points, computed once for criteria 1 and 2.
struct FamilyRun {
  std::vector<Rational> d;
  std::vector<std::vector<Complex>> scaled;
  std::vector<std::vector<double>> seconds;
};

const FamilyRun& family_run() {
  static const FamilyRun run = [] {
    FamilyRun r;
    for (const auto& d : family()) {
      auto m = models::two_primary(d);
      std::vector<Complex> row;
      std::vector<double> secs;
      for (const auto& p : family_points()) {
        auto start = Clock::now();
        auto res = genus_potential(m, p, 2);
        secs.push_back(std::chrono::duration<double>(Clock::now() - start).count());
        row.push_back(scaled_f2(m, p, res.value));
      }
      r.d.push_back(d);
      r.scaled.push_back(row);
      r.seconds.push_back(secs);
    }
    return r;
  }();
  return run;
}

CriterionResult criterion1() {
  Check c;
  const auto& run = family_run();
  Real worst = 0;
  double slowest = 0;
  int points = 0;
  for (std::size_t i = 0; i < run.d.size(); ++i) {
    Complex expect(closed_form(run.d[i]));
    for (std::size_t j = 0; j < run.scaled[i].size(); ++j) {
      ++points;
      slowest = std::max(slowest, run.seconds[i][j]);
      // the closed form is zero at d = 1/3; compare on the scaled value there
      Real err = abs(run.scaled[i][j] - expect) / (closed_form(run.d[i]) == 0 ? Real(1) : abs(expect));
      worst = std::max(worst, err);
    }
  }
  c.require(worst <= Real("1e-25"), "relative error " + sci(worst));
  c.require(slowest <= 60, "slowest point " + std::to_string(slowest) + " s");
  std::ostringstream d;
  d << points << " points, worst relative error " << sci(worst) << ", slowest " << slowest << " s";
  return {1, "genus-2 closed form", c.ok, c.ok ? d.str() : c.notes.str(), 0};
}

CriterionResult criterion2() {
  Check c;
  const auto& run = family_run();
  Real vanish = 0, sym = 0;
  auto index = [&](const Rational& d) {
    for (std::size_t i = 0; i < run.d.size(); ++i)
      if (run.d[i] == d) return i;
    throw ValidationError("missing family member");
  };
  for (const auto& v : run.scaled[index(Rational(1, 3))]) vanish = std::max(vanish, abs(v));
  for (auto [a, b] : {std::pair{Rational(1, 3), Rational(5, 3)}, std::pair{Rational(1, 2), Rational(3, 2)}}) {
    const auto& ra = run.scaled[index(a)];
    const auto& rb = run.scaled[index(b)];
    for (const auto& x : ra)
      for (const auto& y : rb) sym = std::max(sym, abs(x - y));
  }
  // d = 1 is its own mirror: the scaled value is constant along the family
  const auto& r1 = run.scaled[index(Rational(1))];
  for (const auto& x : r1) sym = std::max(sym, abs(x - r1.front()));
  c.require(vanish <= Real("1e-25"), "d=1/3 residual " + sci(vanish));
  c.require(sym <= Real("1e-25"), "d<->2-d residual " + sci(sym));
  return {2, "d=1/3 vanishing and d<->2-d symmetry", c.ok,
          c.ok ? "vanishing " + sci(vanish) + ", symmetry " + sci(sym) : c.notes.str(), 0};
}

CriterionResult criterion3() {
  Check c;
  auto& table = intersection_table();
  int checked = 0;
  for (int g = 0; g <= 3; ++g)
    // identities relate n-point entries to (n+1)-point ones, n + 1 <= 8
    for (int n = 1; n <= 7; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      const int dim = 3 * g - 3 + n;
      // all sorted index lists with the right dimension
      std::vector<int> ks;
      std::function<void(int, int)> rec = [&](int lo, int left) {
        if (static_cast<int>(ks.size()) == n) {
          if (left != 0) return;
          Rational v = table(g, ks);
          // string: <tau_0 X> = sum_j <X with k_j - 1>; dilaton: <tau_1 X> = (2g - 2 + n) <X>
          std::vector<int> with0 = ks, with1 = ks;
          with0.push_back(0);
          with1.push_back(1);
          Rational s = 0;
          for (std::size_t j = 0; j < ks.size(); ++j) {
            if (ks[j] == 0) continue;
            auto low = ks;
            --low[j];
            s += table(g, low);
          }
          if (table(g, with0) != s) c.require(false, "string fails at g=" + std::to_string(g));
          if (table(g, with1) != Rational(2 * g - 2 + n) * v) c.require(false, "dilaton fails at g=" + std::to_string(g));
          ++checked;
          return;
        }
        const int slots = n - static_cast<int>(ks.size());
        for (int k = lo; k * slots <= left; ++k) {
          ks.push_back(k);
          rec(k, left - k);
          ks.pop_back();
        }
      };
      rec(0, dim);
    }
  c.require(table(0, {0, 0, 0}) == 1, "<tau_0^3>_0");
  c.require(table(1, {1}) == Rational(1, 24), "<tau_1>_1");
  c.require(table(2, {4}) == Rational(1, 1152), "<tau_4>_2");
  return {3, "intersection numbers", c.ok, c.ok ? std::to_string(checked) + " entries, string and dilaton exact, spot values exact" : c.notes.str(), 0};
}

CriterionResult criterion4() {
  Check c;
  std::mt19937 gen(2024);
  std::uniform_int_distribution<int> t0(-100, 100), t1(20, 200);
  Real unit = 0, cons = 0;
  for (int i = 0; i < 10; ++i) {
    auto d = family()[static_cast<std::size_t>(i) % family().size()];
    auto m = models::two_primary(d);
    std::vector<Complex> p{cq(t0(gen), 100), cq(t1(gen), 100)};
    auto frame = canonical_frame(m, p, 7);
    auto r = compute_R(m, frame, 7);
    unit = std::max(unit, unitarity_residual(r));
    cons = std::max(cons, r.consistency_residual);
  }
  c.require(unit <= Real("1e-30"), "unitarity " + sci(unit));
  c.require(cons <= Real("1e-30"), "consistency " + sci(cons));
  return {4, "R-matrix unitarity and consistency", c.ok, "unitarity " + sci(unit) + ", consistency " + sci(cons), 0};
}

CriterionResult criterion5() {
  Check c;
  Real worst = 0;
  int exact = 0;
  for (int g = 2; g <= 3; ++g)
    for (int n = 1; n <= 3; ++n) {
      auto in = synthetic_graph_input(n, g, 100u * static_cast<unsigned>(g) + static_cast<unsigned>(n));
      Rational a = graph_sum(g, in);
      c.require(a == wick_oracle(g, in), "rational mismatch g=" + std::to_string(g) + " N=" + std::to_string(n));
      ++exact;
      auto fin = to_complex_input(in);
      Complex x = graph_sum(g, fin), y = wick_oracle(g, fin);
      worst = std::max(worst, abs(x - y) / abs(y));
    }
  // model pipeline: two primaries
  for (int g = 2; g <= 3; ++g) {
    auto m = models::two_primary(Rational(1, 2));
    auto data = point_data(m, {cq(3, 10), cq(7, 10)}, 3 * g - 2);
    auto in = graph_input(data);
    Complex x = graph_sum(g, in), y = wick_oracle(g, in);
    worst = std::max(worst, abs(x - y) / abs(y));
  }
  c.require(worst <= Real("1e-28"), "float relative " + sci(worst));
  return {5, "graph sum vs Wick oracle", c.ok, std::to_string(exact) + " exact rational cases, float relative " + sci(worst), 0};
}

CriterionResult criterion6() {
  Check c;
  auto rep = hodge_lemma_check(2, 2, 4);
  c.require(rep.compared > 0, "nothing compared");
  c.require(rep.mismatches == 0, std::to_string(rep.mismatches) + " mismatching coefficients");
  c.require(rep.s1_q0 == Rational(1, 24), "s1 Q0 coefficient " + to_string(rep.s1_q0));
  return {6, "Hodge lemma", c.ok,
          std::to_string(rep.compared) + " coefficients equal, s1 Q0 coefficient " + to_string(rep.s1_q0), 0};
}

CriterionResult criterion7() {
  Check c;
  Real worst = 0;
  const Real h("1e-6");
  for (const auto& d : family()) {
    auto m = models::two_primary(d);
    for (const auto& p : {std::vector<Complex>{cq(3, 10), cq(7, 10)}, std::vector<Complex>{cq(-1, 5), cq(13, 10)}})
      worst = std::max(worst, genus1_fd_curl(m, p, h));
  }
  auto pt = models::point();
  auto frame = canonical_frame(pt, {cq(1, 3)}, 1);
  Real ptv = abs(genus1_differential(frame, compute_R(pt, frame, 1))[0]);
  c.require(worst <= Real("1e-20"), "curl " + sci(worst));
  c.require(ptv == 0, "pt form " + sci(ptv));
  return {7, "genus-1 form closed", c.ok, "curl " + sci(worst) + ", pt form " + sci(ptv), 0};
}

CriterionResult criterion8() {
  Check c;
  const Real h("1e-20");
  // (a) point model against the direct sum
  auto pt = models::point();
  auto calp = compute_calibration(pt, {Rational(0)}, 5);
  std::mt19937 gen(8);
  std::uniform_int_distribution<int> dist(-1000, 1000);
  Real worst_a = 0;
  for (int trial = 0; trial < 20; ++trial) {
    CurvePoint tau(6, std::vector<Complex>(1));
    for (auto& tk : tau) tk[0] = cq(dist(gen), 10000);
    Complex f = descendent_potential(pt, calp, tau, 2).value;
    Complex direct = pt_descendent_direct(2, tau, Real("1e-34"));
    worst_a = std::max(worst_a, abs(f - direct));
  }
  c.require(worst_a <= Real("1e-25"), "(a) " + sci(worst_a));
  // (b) two expressions for dF^1
  Real worst_b = 0;
  CurvePoint tau{{cq(3, 10), cq(7, 10)}, {cq(1, 20), cq(-1, 30)}, {cq(1, 40), cq(1, 50)}};
  for (const auto& d : {Rational(1, 2), Rational(1), Rational(1, 3)}) {
    auto m = models::two_primary(d);
    auto cal = compute_calibration(m, {Rational(0), Rational(0)}, 3);
    auto a = genus1_descendent_bold(m, cal, tau, h);
    auto b = genus1_descendent_det(m, cal, tau, h);
    for (std::size_t k = 0; k < a.size(); ++k) worst_b = std::max(worst_b, abs(a[k] - b[k]));
  }
  c.require(worst_b <= Real("1e-20"), "(b) " + sci(worst_b));
  // (c) genus-0 string, dilaton and TRR
  Real worst_c = 0;
  auto m = models::two_primary(Rational(1, 2));
  auto cal = compute_calibration(m, {Rational(0), Rational(0)}, 7);
  CurvePoint t0{{cq(3, 10), cq(7, 10)}, {cq(1, 200), cq(-1, 300)}, {cq(1, 400), cq(1, 500)}};
  auto fd = [&](auto fn, CurvePoint at, int k, int a) {
    at[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] += Complex(h);
    Complex p = fn(at);
    at[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] -= Complex(h * 2);
    return (p - fn(at)) / Complex(h * 2);
  };
  auto r = genus0_descendents(m, cal, t0);
  auto f0 = [&](const CurvePoint& at) { return genus0_descendents(m, cal, at).F0; };
  auto g = to_complex(m.metric());
  auto ginv = to_complex(m.metric_inverse());
  Complex string_rhs, dil = -Complex(2) * r.F0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) string_rhs += g(a, b) * t0[0][a] * t0[0][b] / Complex(2);
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < 2; ++a) string_rhs += t0[k + 1][a] * r.first[k][a];
  for (int k = 0; k <= 2; ++k)
    for (int a = 0; a < 2; ++a) dil += t0[k][a] * r.first[k][a];
  worst_c = std::max(worst_c, abs(fd(f0, t0, 0, 0) - string_rhs));
  worst_c = std::max(worst_c, abs(fd(f0, t0, 1, 0) - dil));
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int cc = 0; cc < 2; ++cc) {
          auto second = [&](int x, int y) {
            return [&, x, y](const CurvePoint& at) { return genus0_descendents(m, cal, at).second.at({0, 0})(x, y); };
          };
          Complex lhs = fd(second(b, cc), t0, k + 1, a);
          Complex rhs;
          for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) rhs += r.second.at({k, 0})(a, mu) * ginv(mu, nu) * fd(second(nu, b), t0, 0, cc);
          worst_c = std::max(worst_c, abs(lhs - rhs));
        }
  c.require(worst_c <= Real("1e-25"), "(c) " + sci(worst_c));
  return {8, "descendents", c.ok, "(a) " + sci(worst_a) + ", (b) " + sci(worst_b) + ", (c) " + sci(worst_c), 0};
}

CriterionResult criterion9() {
  Check c;
  Real worst = 0;
  auto rel = [](const Complex& a, const Complex& b) { return abs(a - b) / std::max(Real(1e-60), abs(b)); };
  // F^2, F^3 on the two-primary family under relabeling and branch flips
  for (const auto& d : {Rational(1, 2), Rational(1), Rational(5, 3)}) {
    auto m = models::two_primary(d);
    std::vector<Complex> p{cq(3, 10), cq(7, 10)};
    for (int g = 2; g <= 3; ++g) {
      Complex base = genus_potential(m, p, g).value;
      GenusOptions perm, flip, both;
      perm.frame.permutation = {1, 0};
      flip.frame.flip = {true, false};
      both.frame.permutation = {1, 0};
      both.frame.flip = {true, true};
      for (const auto& o : {perm, flip, both}) worst = std::max(worst, rel(genus_potential(m, p, g, o).value, base));
    }
  }
  // three primaries: the values vanish, so compare absolutely
  auto a3 = models::a3();
  std::vector<Complex> p3{cq(1, 3), cq(2, 5), cq(3, 7)};
  Complex base3 = genus_potential(a3, p3, 2).value;
  GenusOptions cyc;
  cyc.frame.permutation = {2, 0, 1};
  cyc.frame.flip = {false, true, false};
  Real a3diff = abs(genus_potential(a3, p3, 2, cyc).value - base3);
  c.require(a3diff <= Real("1e-60"), "three primaries " + sci(a3diff));
  // descendent F^2
  auto m = models::two_primary(Rational(1, 2));
  auto cal = compute_calibration(m, {Rational(0), Rational(0)}, 3);
  CurvePoint tau{{cq(3, 10), cq(7, 10)}, {cq(1, 20), cq(-1, 30)}, {cq(1, 40), cq(1, 50)}};
  Complex dbase = descendent_potential(m, cal, tau, 2).value;
  GenusOptions perm, flip;
  perm.frame.permutation = {1, 0};
  flip.frame.flip = {false, true};
  worst = std::max(worst, rel(descendent_potential(m, cal, tau, 2, perm).value, dbase));
  worst = std::max(worst, rel(descendent_potential(m, cal, tau, 2, flip).value, dbase));
  c.require(worst <= Real("1e-28"), "relative " + sci(worst));
  // twist then untwist
  auto frame = canonical_frame(m, {cq(3, 10), cq(7, 10)}, 6);
  auto r = compute_R(m, frame, 6);
  TwistConstants a{{cq(1, 7), cq(-2, 9)}, {cq(3, 11), cq(1, 13)}}, minus = a;
  for (auto& row : minus)
    for (auto& x : row) x = -x;
  auto back = twist_R(twist_R(r, a), minus);
  Real round = 0;
  for (int k = 0; k <= r.K; ++k) round = std::max(round, max_abs(back.R[static_cast<std::size_t>(k)] - r.R[static_cast<std::size_t>(k)]));
  c.require(round <= Real("1e-60"), "twist round trip " + sci(round));
  return {9, "invariance", c.ok, "relative " + sci(worst) + ", twist round trip " + sci(round), 0};
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.title << "): " << r.detail;
  return os.str();
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& only) {
  const std::vector<std::function<CriterionResult()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                           criterion6, criterion7, criterion8, criterion9};
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    auto start = Clock::now();
    CriterionResult r;
    try {
      r = all[i]();
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    out << format_result(r) << " [" << std::fixed << std::setprecision(1) << r.seconds << " s]" << std::endl;
    results.push_back(r);
  }
  return results;
}

}  // namespace hgf
