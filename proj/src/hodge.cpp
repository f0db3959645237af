#include "hgfrob/hodge.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "hgfrob/intersection.hpp"
#include "hgfrob/rmatrix.hpp"

namespace hgf {

QPoly::QPoly(SpacePtr ring, int hbar_cap, int degree_cap)
    : ring_(std::move(ring)), hbar_cap_(hbar_cap), degree_cap_(degree_cap) {}

void QPoly::add(int h, std::vector<int> q, const RationalSeries& c) {
  if (h > hbar_cap_ || static_cast<int>(q.size()) > degree_cap_ || c.is_zero()) return;
  std::sort(q.begin(), q.end());
  auto [it, inserted] = terms_.try_emplace(Key{h, std::move(q)}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

RationalSeries QPoly::coefficient(int h, std::vector<int> q) const {
  std::sort(q.begin(), q.end());
  auto it = terms_.find(Key{h, q});
  return it == terms_.end() ? RationalSeries(ring_) : it->second;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

QPoly QPoly::operator+(const QPoly& o) const {
  QPoly r = *this;
  r += o;
  return r;
}

QPoly QPoly::operator-(const QPoly& o) const {
  QPoly r = *this;
  for (const auto& [k, c] : o.terms_) r.add(k.first, k.second, -c);
  return r;
}

QPoly QPoly::operator*(const RationalSeries& c) const {
  QPoly r(ring_, hbar_cap_, degree_cap_);
  for (const auto& [k, v] : terms_) r.add(k.first, k.second, v * c);
  return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
  QPoly r(ring_, std::min(hbar_cap_, o.hbar_cap_), std::min(degree_cap_, o.degree_cap_));
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      if (ka.first + kb.first > r.hbar_cap_ || static_cast<int>(ka.second.size() + kb.second.size()) > r.degree_cap_) continue;
      std::vector<int> q = ka.second;
      q.insert(q.end(), kb.second.begin(), kb.second.end());
      r.add(ka.first + kb.first, std::move(q), ca * cb);
    }
  return r;
}

QPoly QPoly::derivative(int k) const {
  QPoly r(ring_, hbar_cap_, degree_cap_);
  for (const auto& [key, c] : terms_) {
    auto count = std::count(key.second.begin(), key.second.end(), k);
    if (count == 0) continue;
    std::vector<int> q = key.second;
    q.erase(std::find(q.begin(), q.end(), k));
    r.add(key.first, std::move(q), c * Rational(static_cast<long>(count)));
  }
  return r;
}

QPoly QPoly::hbar_shift(int by) const {
  QPoly r(ring_, hbar_cap_, degree_cap_);
  for (const auto& [key, c] : terms_) r.add(key.first + by, key.second, c);
  return r;
}

QPoly QPoly::lowering(int shift) const {
  QPoly r(ring_, hbar_cap_, degree_cap_);
  for (const auto& [key, c] : terms_) {
    const auto& q = key.second;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] < shift || (i > 0 && q[i] == q[i - 1])) continue;
      auto count = std::count(q.begin(), q.end(), q[i]);
      std::vector<int> out = q;
      out[i] -= shift;
      r.add(key.first, std::move(out), c * Rational(-static_cast<long>(count)));
    }
  }
  return r;
}

QPoly QPoly::truncated(int hbar_cap, int degree_cap) const {
  QPoly r(ring_, hbar_cap, degree_cap);
  for (const auto& [key, c] : terms_) r.add(key.first, key.second, c);
  return r;
}

int QPoly::max_index() const {
  int m = -1;
  for (const auto& [key, c] : terms_)
    if (!key.second.empty()) m = std::max(m, key.second.back());
  return m;
}

SpacePtr hodge_ring(int count) {
  std::vector<std::string> names;
  for (int m = 1; m <= count; ++m) names.push_back("s" + std::to_string(m));
  return SeriesSpace::make(names, std::vector<int>(static_cast<std::size_t>(count), 1));
}

namespace {

RationalSeries ring_constant(const SpacePtr& ring, const Rational& c) { return RationalSeries::constant(ring, c); }

// Sorted index lists of length n with the given sum.
void index_lists(int n, int sum, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int lo, int left) {
    if (static_cast<int>(cur.size()) == n) {
      if (left == 0) emit(cur);
      return;
    }
    int slots = n - static_cast<int>(cur.size());
    for (int k = lo; k * slots <= left; ++k) {
      cur.push_back(k);
      rec(k, left - k);
      cur.pop_back();
    }
  };
  rec(0, sum);
}

Rational multiset_factorial(const std::vector<int>& q) {
  Rational r = 1;
  for (std::size_t i = 0; i < q.size();) {
    std::size_t j = i;
    while (j < q.size() && q[j] == q[i]) ++j;
    for (std::size_t m = 2; m <= j - i; ++m) r *= static_cast<long>(m);
    i = j;
  }
  return r;
}

// (n+1) B_{n+1} = scale [hbar sum_kl c_kl d_k d_l B_n + sum_kl c_kl sum_{p+q=n} d_k B_p d_l B_q + linear(B_n)]
// with the series summed until B_n vanishes; scale carries the nilpotent factor.
QPoly nilpotent_flow(const QPoly& start, const RationalSeries& scale, const std::map<std::pair<int, int>, RationalSeries>& quad,
                     const std::function<QPoly(const QPoly&)>& linear) {
  std::vector<QPoly> b{start};
  QPoly total = start;
  for (int n = 0; n < 64; ++n) {
    QPoly next(start.ring(), start.hbar_cap(), start.degree_cap());
    std::map<std::pair<int, int>, QPoly> dcache;  // (p, k) -> d_k B_p
    auto d = [&](int p, int k) -> const QPoly& {
      auto key = std::make_pair(p, k);
      auto it = dcache.find(key);
      if (it == dcache.end()) it = dcache.emplace(key, b[static_cast<std::size_t>(p)].derivative(k)).first;
      return it->second;
    };
    for (const auto& [kl, c] : quad) {
      auto [k, l] = kl;
      next += d(n, k).derivative(l).hbar_shift(1) * c;
      for (int p = 0; p <= n; ++p) next += (d(p, k) * d(n - p, l)) * c;
    }
    if (linear) next += linear(b.back());
    next = next * (scale * Rational(1, n + 1));
    if (next.is_zero()) break;
    total += next;
    b.push_back(std::move(next));
    if (n == 63) throw NumericalError("flow did not terminate: coefficients are not nilpotent");
  }
  return total;
}

// Flow along s_m of the log-form Hodge PDE system.
QPoly flow_s(const QPoly& g, int m, const std::vector<Rational>& bernoulli) {
  const SpacePtr& ring = g.ring();
  Rational c = bernoulli[static_cast<std::size_t>(2 * m)];
  for (int i = 2; i <= 2 * m; ++i) c /= i;
  RationalSeries scale = RationalSeries::variable(ring, m - 1) * c;
  // hbar D_m + quadratic part: 1/2 sum_{k+l=2m-2} (-1)^k
  std::map<std::pair<int, int>, RationalSeries> quad;
  for (int k = 0; k <= 2 * m - 2; ++k) quad.emplace(std::make_pair(k, 2 * m - 2 - k), ring_constant(ring, Rational(k % 2 ? -1 : 1, 2)));
  auto lm = [m](const QPoly& b) { return b.derivative(2 * m) + b.lowering(2 * m - 1); };
  return nilpotent_flow(g, scale, quad, lm);
}

}  // namespace

QPoly tau_log(const SpacePtr& ring, int hbar_cap, int degree_cap) {
  QPoly out(ring, hbar_cap, degree_cap);
  for (int g = 0; g <= hbar_cap; ++g)
    for (int n = 1; n <= degree_cap; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      index_lists(n, 3 * g - 3 + n, [&](const std::vector<int>& ks) {
        Rational v = psi_intersection(g, ks);
        if (v != 0) out.add(g, ks, ring_constant(ring, v / multiset_factorial(ks)));
      });
    }
  return out;
}

QPoly hodge_lambda_log(int count, int hbar_cap, int degree_cap, const std::vector<int>& order) {
  std::vector<int> seq = order;
  if (seq.empty()) {
    seq.resize(static_cast<std::size_t>(count));
    std::iota(seq.begin(), seq.end(), 1);
  }
  auto ring = hodge_ring(count);
  auto b = bernoulli_numbers(2 * count);
  // Each flow consumes two Q-degrees of validity.
  QPoly g = tau_log(ring, hbar_cap, degree_cap + 2 * count);
  for (int m : seq) {
    if (m < 1 || m > count) throw ValidationError("flow index outside the parameter range");
    g = flow_s(g, m, b);
  }
  return g.truncated(hbar_cap, degree_cap);
}

LemmaComponents lemma_components(const std::vector<RationalSeries>& a, int cap) {
  if (a.empty()) throw ValidationError("lemma components need at least one a_k");
  const SpacePtr& ring = a.front().space();
  const int r = ring->size();
  std::vector<std::string> names = ring->names();
  names.push_back("z");
  names.push_back("w");
  std::vector<int> caps = ring->caps();
  caps.push_back(cap + 1);
  caps.push_back(cap + 1);
  std::vector<int> wz(static_cast<std::size_t>(r + 2), 0);
  wz[static_cast<std::size_t>(r)] = wz[static_cast<std::size_t>(r + 1)] = 1;
  auto space = SeriesSpace::make(names, caps, {WeightedCap{wz, cap + 1}});

  auto lift = [&](const RationalSeries& c, int zexp, int wexp) {
    RationalSeries out(space);
    for (const auto& [e, v] : c.terms()) {
      Exponents x = e;
      x.push_back(static_cast<std::uint8_t>(zexp));
      x.push_back(static_cast<std::uint8_t>(wexp));
      out.add_term(x, v);
    }
    return out;
  };
  auto lower = [&](const RationalSeries& s, int zexp, int wexp) {
    RationalSeries out(ring);
    for (const auto& [e, v] : s.terms()) {
      if (e[static_cast<std::size_t>(r)] != zexp || e[static_cast<std::size_t>(r + 1)] != wexp) continue;
      out.add_term(Exponents(e.begin(), e.begin() + r), v);
    }
    return out;
  };

  RationalSeries az(space), aw(space);
  for (std::size_t k = 0; k < a.size(); ++k) {
    int p = 2 * static_cast<int>(k) + 1;
    if (p > cap + 1) break;
    az += lift(a[k], p, 0);
    aw += lift(a[k], 0, p);
  }
  LemmaComponents out;
  RationalSeries num = (az + aw).exp() - RationalSeries::constant(space, Rational(1));
  RationalSeries q = singular_quotient(num, r, r + 1);
  for (int k = 0; k <= cap; ++k)
    for (int l = 0; k + l <= cap; ++l) {
      RationalSeries v = lower(q, k, l);
      if ((k + l) % 2) v = -v;
      out.v.emplace(std::make_pair(k, l), v);
    }
  RationalSeries ez = az.exp();
  std::vector<RationalSeries> e;
  for (int n = 0; n <= cap; ++n) e.push_back(lower(ez, n, 0));
  // Qt_n = (-1)^n [ sum_{j<=n} (-1)^j Q_j e_{n-j} + e_{n-1} - delta_{n1} ]
  for (int n = 0; n <= cap; ++n) {
    std::vector<RationalSeries> row;
    for (int j = 0; j <= n; ++j) {
      RationalSeries c = e[static_cast<std::size_t>(n - j)];
      if ((n + j) % 2) c = -c;
      row.push_back(c);
    }
    out.lin.push_back(row);
    RationalSeries sh(ring);
    if (n >= 1) {
      sh = e[static_cast<std::size_t>(n - 1)];
      if (n == 1) sh -= RationalSeries::constant(ring, Rational(1));
      if (n % 2) sh = -sh;
    }
    out.shift.push_back(sh);
  }
  return out;
}

QPoly hodge_lemma_rhs(int count, int hbar_cap, int degree_cap) {
  auto ring = hodge_ring(count);
  auto b = bernoulli_numbers(2 * count);
  std::vector<RationalSeries> a;
  for (int k = 1; k <= count; ++k) {
    Rational c = b[static_cast<std::size_t>(2 * k)];
    for (int i = 2; i <= 2 * k; ++i) c /= i;
    a.push_back(RationalSeries::variable(ring, k - 1) * c);
  }
  // Validity: the substitution needs count extra degrees, each of the at
  // most count flow steps two more.
  const int internal = degree_cap + 3 * count;
  QPoly g = tau_log(ring, hbar_cap, internal);
  const int cap = g.max_index() + 1;
  auto comp = lemma_components(a, cap);

  // e^{hbar P} in log form: flow with 1/2 sum v_kl (hbar d_k d_l + d_k . d_l).
  std::map<std::pair<int, int>, RationalSeries> quad;
  for (const auto& [kl, v] : comp.v)
    if (!v.is_zero()) quad.emplace(kl, v * Rational(1, 2));
  QPoly flowed = nilpotent_flow(g, RationalSeries::constant(ring, Rational(1)), quad, nullptr);

  // Substitute Q = Qt(Q): each factor Q_n becomes Q_n + delta_n with delta_n
  // nilpotent, so at most `count` factors take the delta part.
  std::vector<std::vector<std::pair<int, RationalSeries>>> delta(comp.lin.size());
  for (std::size_t n = 0; n < comp.lin.size(); ++n) {
    for (std::size_t j = 0; j < comp.lin[n].size(); ++j) {
      RationalSeries c = comp.lin[n][j];
      if (j == n) c -= RationalSeries::constant(ring, Rational(1));
      if (!c.is_zero()) delta[n].emplace_back(static_cast<int>(j), c);
    }
    if (!comp.shift[n].is_zero()) delta[n].emplace_back(-1, comp.shift[n]);
  }
  QPoly out(ring, hbar_cap, degree_cap);
  for (const auto& [key, c] : flowed.terms()) {
    const auto& q = key.second;
    if (static_cast<int>(q.size()) > degree_cap + count) continue;
    std::vector<int> cur;
    std::function<void(std::size_t, int, int, RationalSeries)> rec = [&](std::size_t pos, int used, int consts, RationalSeries coeff) {
      if (static_cast<int>(q.size()) - consts > degree_cap + (static_cast<int>(q.size()) - static_cast<int>(pos))) return;
      if (pos == q.size()) {
        out.add(key.first, cur, coeff);
        return;
      }
      cur.push_back(q[pos]);
      rec(pos + 1, used, consts, coeff);
      cur.pop_back();
      if (used >= count) return;
      if (static_cast<std::size_t>(q[pos]) >= delta.size()) throw NumericalError("substitution beyond the computed range");
      for (const auto& [j, dc] : delta[static_cast<std::size_t>(q[pos])]) {
        RationalSeries nc = coeff * dc;
        if (nc.is_zero()) continue;
        if (j >= 0) cur.push_back(j);
        rec(pos + 1, used + 1, consts + (j < 0), nc);
        if (j >= 0) cur.pop_back();
      }
    };
    rec(0, 0, 0, c);
  }
  return out;
}

LemmaReport hodge_lemma_check(int count, int genus_cap, int degree_cap) {
  QPoly lhs = hodge_lambda_log(count, genus_cap, degree_cap);
  QPoly rhs = hodge_lemma_rhs(count, genus_cap, degree_cap);
  LemmaReport rep;
  std::map<QPoly::Key, int> keys;
  for (const auto& [k, c] : lhs.terms()) keys[k] = 1;
  for (const auto& [k, c] : rhs.terms()) keys[k] = 1;
  for (const auto& [k, unused] : keys) {
    RationalSeries a = lhs.coefficient(k.first, k.second), b = rhs.coefficient(k.first, k.second);
    std::map<Exponents, int> mono;
    for (const auto& [e, c] : a.terms()) mono[e] = 1;
    for (const auto& [e, c] : b.terms()) mono[e] = 1;
    for (const auto& [e, u] : mono) {
      ++rep.compared;
      if (a.coefficient(e) != b.coefficient(e)) ++rep.mismatches;
    }
  }
  Exponents s1(static_cast<std::size_t>(count), 0);
  s1[0] = 1;
  rep.s1_q0 = lhs.coefficient(1, {0}).coefficient(s1);
  return rep;
}

}  // namespace hgf
