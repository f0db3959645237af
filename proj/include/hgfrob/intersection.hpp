#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "hgfrob/scalar.hpp"

namespace hgf {

enum class IntersectionStrategy {
  reduced,   // string and dilaton first, DVV on the largest index otherwise
  dvv_only,  // DVV on the largest index down to <tau_0^3>_0 and <tau_1>_1
};

// Memoized <tau_{k_1} ... tau_{k_n}>_g. Thread-safe; each key is inserted once.
class IntersectionTable {
 public:
  explicit IntersectionTable(IntersectionStrategy strategy = IntersectionStrategy::reduced) : strategy_(strategy) {}

  // Throws ValidationError for unstable (g, n) or negative indices.
  Rational operator()(int g, std::vector<int> ks);
  std::size_t size() const;
  IntersectionStrategy strategy() const { return strategy_; }

 private:
  Rational compute(int g, const std::vector<int>& ks);
  Rational dvv(int g, const std::vector<int>& ks);
  // Zero for unstable or negative-index arguments instead of throwing.
  Rational lookup_or_zero(int g, std::vector<int> ks);

  IntersectionStrategy strategy_;
  mutable std::mutex mutex_;
  std::map<std::pair<int, std::vector<int>>, Rational> memo_;
};

// Process-wide table with the reduced strategy.
IntersectionTable& intersection_table();

Rational psi_intersection(int g, const std::vector<int>& ks);

// Largest tail index a vertex of genus g with the given edge powers can use.
int vertex_tail_budget(int g, const std::vector<int>& ks);

// sum_n 1/n! sum_{a_j >= 2} prod T_{a_j} <prod tau_k prod tau_{a_j}>_g,
// without the (hbar Delta)^{g-1} factor. Unstable vertices give 0.
template <class F>
F vertex_correlator(int g, const std::vector<int>& ks, const std::vector<F>& tail);

}  // namespace hgf
