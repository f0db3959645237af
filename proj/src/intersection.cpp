#include "hgfrob/intersection.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace hgf {

namespace {

// (2m - 1)!! with (-1)!! = (-3)!! = 1.
Integer odd_factorial(int m) {
  Integer r = 1;
  for (int j = 2 * m - 1; j > 1; j -= 2) r *= j;
  return r;
}

bool stable(int g, std::size_t n) { return g >= 0 && 2 * g - 2 + static_cast<int>(n) > 0; }

}  // namespace

std::size_t IntersectionTable::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.size();
}

Rational IntersectionTable::operator()(int g, std::vector<int> ks) {
  if (!stable(g, ks.size())) throw ValidationError("unstable intersection number");
  for (int k : ks)
    if (k < 0) throw ValidationError("negative psi power");
  return lookup_or_zero(g, std::move(ks));
}

Rational IntersectionTable::lookup_or_zero(int g, std::vector<int> ks) {
  if (!stable(g, ks.size())) return 0;
  for (int k : ks)
    if (k < 0) return 0;
  int dim = 3 * g - 3 + static_cast<int>(ks.size());
  if (std::accumulate(ks.begin(), ks.end(), 0) != dim) return 0;
  std::sort(ks.begin(), ks.end());
  auto key = std::make_pair(g, ks);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Rational v = compute(g, ks);
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.try_emplace(key, v).first->second;
}

Rational IntersectionTable::compute(int g, const std::vector<int>& ks) {
  const std::size_t n = ks.size();
  if (g == 0 && n == 3) return 1;  // all indices are 0 by dimension
  if (g == 1 && n == 1) return Rational(1, 24);
  if (strategy_ == IntersectionStrategy::reduced) {
    // ks is sorted: a leading 0 allows the string equation, then 1 dilaton.
    if (ks.front() == 0) {
      std::vector<int> rest(ks.begin() + 1, ks.end());
      Rational sum = 0;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (rest[j] == 0) continue;
        auto r = rest;
        --r[j];
        sum += lookup_or_zero(g, r);
      }
      return sum;
    }
    if (ks.front() == 1) {
      std::vector<int> rest(ks.begin() + 1, ks.end());
      return Rational(2 * g - 2 + static_cast<int>(rest.size())) * lookup_or_zero(g, rest);
    }
  }
  return dvv(g, ks);
}

// DVV recursion, removing tau_{k+1} with k + 1 the largest index:
// (2k+3)!! <tau_{k+1} tau_S>_g = sum_j (2k+2k_j+1)!!/(2k_j-1)!! <tau_{k+k_j} tau_{S-j}>_g
//   + 1/2 sum_{r+s=k-1} (2r+1)!!(2s+1)!! [<tau_r tau_s tau_S>_{g-1}
//   + sum_{g1+g2=g, I+J=S} <tau_r tau_I>_{g1} <tau_s tau_J>_{g2}]
Rational IntersectionTable::dvv(int g, const std::vector<int>& ks) {
  const int k = ks.back() - 1;
  std::vector<int> s(ks.begin(), ks.end() - 1);
  const std::size_t m = s.size();
  Rational total = 0;
  for (std::size_t j = 0; j < m; ++j) {
    auto r = s;
    r[j] = k + s[j];
    if (r[j] < 0) continue;
    Rational c(odd_factorial(k + s[j] + 1), odd_factorial(s[j]));
    total += c * lookup_or_zero(g, r);
  }
  for (int a = 0; a <= k - 1; ++a) {
    int b = k - 1 - a;
    Rational c = Rational(odd_factorial(a + 1) * odd_factorial(b + 1)) / 2;
    if (g >= 1) {
      auto r = s;
      r.push_back(a);
      r.push_back(b);
      total += c * lookup_or_zero(g - 1, r);
    }
    // Splittings of S into I and J by bitmask.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<int> left{a}, right{b};
      for (std::size_t j = 0; j < m; ++j) ((mask >> j) & 1 ? left : right).push_back(s[j]);
      for (int g1 = 0; g1 <= g; ++g1) {
        Rational x = lookup_or_zero(g1, left);
        if (x == 0) continue;
        total += c * x * lookup_or_zero(g - g1, right);
      }
    }
  }
  return total / Rational(odd_factorial(k + 2));
}

IntersectionTable& intersection_table() {
  static IntersectionTable table;
  return table;
}

Rational psi_intersection(int g, const std::vector<int>& ks) { return intersection_table()(g, ks); }

int vertex_tail_budget(int g, const std::vector<int>& ks) {
  return 3 * g - 3 + static_cast<int>(ks.size()) - std::accumulate(ks.begin(), ks.end(), 0);
}

template <class F>
F vertex_correlator(int g, const std::vector<int>& ks, const std::vector<F>& tail) {
  const int budget = vertex_tail_budget(g, ks);
  if (budget < 0) return F(0);
  // Stability with the tails added: g = 0 needs 3 points, g = 1 needs 1.
  // Multisets of tail indices a >= 2 with sum (a - 1) = budget.
  F total(0);
  std::vector<int> chosen;
  std::function<void(int, int, F)> rec = [&](int min_a, int left, F weight) {
    if (left == 0) {
      std::vector<int> all = ks;
      all.insert(all.end(), chosen.begin(), chosen.end());
      if (!stable(g, all.size())) return;
      Rational v = intersection_table()(g, all);
      if (v != 0) total += weight * ScalarTraits<F>::from_rational(v);
      return;
    }
    for (int a = min_a; a - 1 <= left; ++a) {
      if (a >= static_cast<int>(tail.size())) throw ValidationError("tail values needed beyond the computed range");
      const F& t = tail[static_cast<std::size_t>(a)];
      if (ScalarTraits<F>::is_zero(t)) continue;
      // Multiplicity m of a: weight t^m / m!
      F w = weight;
      int used = 0;
      for (int mult = 1; (a - 1) * mult <= left; ++mult) {
        w = w * t / F(mult);
        used += a - 1;
        for (int i = 0; i < mult; ++i) chosen.push_back(a);
        rec(a + 1, left - used, w);
        for (int i = 0; i < mult; ++i) chosen.pop_back();
      }
    }
  };
  rec(2, budget, F(1));
  return total;
}

template Rational vertex_correlator<Rational>(int, const std::vector<int>&, const std::vector<Rational>&);
template Complex vertex_correlator<Complex>(int, const std::vector<int>&, const std::vector<Complex>&);

}  // namespace hgf
