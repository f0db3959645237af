#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hgfrob/series.hpp"

namespace hgf {

// Polynomial in hbar and Q_0, Q_1, ... with coefficients in a ring of
// truncated series in parameters s_1, ..., s_m. A monomial is keyed by its
// hbar power and the sorted list of Q indices. Terms beyond the hbar and
// Q-degree caps are dropped.
class QPoly {
 public:
  using Key = std::pair<int, std::vector<int>>;
  using Terms = std::map<Key, RationalSeries>;

  QPoly(SpacePtr ring, int hbar_cap, int degree_cap);

  const SpacePtr& ring() const { return ring_; }
  int hbar_cap() const { return hbar_cap_; }
  int degree_cap() const { return degree_cap_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(int h, std::vector<int> q, const RationalSeries& c);
  RationalSeries coefficient(int h, std::vector<int> q) const;

  QPoly& operator+=(const QPoly& o);
  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const RationalSeries& c) const;
  QPoly operator*(const QPoly& o) const;

  QPoly derivative(int k) const;
  QPoly hbar_shift(int by = 1) const;
  // Replaces each Q_j (j >= shift) by -Q_{j - shift}, summed over factors:
  // the vector field -sum_k Q_k d/dQ_{k+shift}.
  QPoly lowering(int shift) const;
  QPoly truncated(int hbar_cap, int degree_cap) const;
  int max_index() const;

 private:
  SpacePtr ring_;
  int hbar_cap_;
  int degree_cap_;
  Terms terms_;
};

// Ring of series in s_1..s_count, each of degree at most one.
SpacePtr hodge_ring(int count);

// hbar log tau = sum_g hbar^g sum_n 1/n! <Q(psi) ... Q(psi)>_g.
QPoly tau_log(const SpacePtr& ring, int hbar_cap, int degree_cap);

// hbar log lambda: flows the s_m directions of the Hodge PDE system in the
// listed order starting from hbar log tau.
QPoly hodge_lambda_log(int count, int hbar_cap, int degree_cap, const std::vector<int>& order = {});

// v_kl of 1/(z+w) + sum v_kl (-z)^k (-w)^l = exp(sum a_k (z^{2k-1} + w^{2k-1}))/(z+w)
// and the substitution Qt_n = sum_j lin[n][j] Q_j + shift[n] from
// z + Qt(-z) = (z + Q(-z)) exp(sum a_k z^{2k-1}), for n <= cap.
struct LemmaComponents {
  std::map<std::pair<int, int>, RationalSeries> v;
  std::vector<std::vector<RationalSeries>> lin;
  std::vector<RationalSeries> shift;
};
LemmaComponents lemma_components(const std::vector<RationalSeries>& a, int cap);

// Right-hand side of the Lemma in hbar-log form with a_k = B_{2k} s_k/(2k)!.
QPoly hodge_lemma_rhs(int count, int hbar_cap, int degree_cap);

struct LemmaReport {
  std::size_t compared = 0;
  std::size_t mismatches = 0;
  Rational s1_q0;  // hbar^0 s_1 Q_0 coefficient of log lambda
};
// Exact coefficient comparison of both sides for genus <= genus_cap and
// Q-degree <= degree_cap; the hbar power of a QPoly term is the genus.
LemmaReport hodge_lemma_check(int count, int genus_cap, int degree_cap);

}  // namespace hgf
