#pragma once

// Truncated multivariate formal power series with explicit caps.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hgfrob/scalar.hpp"

namespace hgf {

using Exponents = std::vector<std::uint8_t>;

struct WeightedCap {
  std::vector<int> weights;
  int cap = 0;
  bool operator==(const WeightedCap&) const = default;
};

// Variables and truncation shared by every series in a computation. Every
// variable carries its own cap; weighted caps (sum w_v e_v <= cap) refine it.
class SeriesSpace {
 public:
  SeriesSpace(std::vector<std::string> names, std::vector<int> caps, std::vector<WeightedCap> weighted = {});

  static std::shared_ptr<const SeriesSpace> make(std::vector<std::string> names, std::vector<int> caps,
                                                 std::vector<WeightedCap> weighted = {});
  // All variables share one total-degree cap.
  static std::shared_ptr<const SeriesSpace> total_degree(std::vector<std::string> names, int cap);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& caps() const { return caps_; }
  const std::vector<WeightedCap>& weighted() const { return weighted_; }
  int index_of(const std::string& name) const;
  bool admits(const Exponents& e) const;

  bool operator==(const SeriesSpace& o) const {
    return names_ == o.names_ && caps_ == o.caps_ && weighted_ == o.weighted_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> caps_;
  std::vector<WeightedCap> weighted_;
};

using SpacePtr = std::shared_ptr<const SeriesSpace>;

template <class F>
class TruncatedSeries {
 public:
  using Terms = std::map<Exponents, F>;

  TruncatedSeries() = default;
  explicit TruncatedSeries(SpacePtr space);

  static TruncatedSeries constant(SpacePtr space, const F& c);
  static TruncatedSeries variable(SpacePtr space, int index);
  static TruncatedSeries monomial(SpacePtr space, const Exponents& e, const F& c);

  const SpacePtr& space() const { return space_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  F coefficient(const Exponents& e) const;
  F constant_term() const;
  // Adds c to the coefficient of e; silently dropped outside the caps.
  void add_term(const Exponents& e, const F& c);

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const F& c);
  TruncatedSeries operator-() const;

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return a.times(b); }
  friend TruncatedSeries operator*(TruncatedSeries a, const F& c) { return a *= c; }
  friend TruncatedSeries operator*(const F& c, TruncatedSeries a) { return a *= c; }

  TruncatedSeries times(const TruncatedSeries& o) const;
  TruncatedSeries inverse() const;
  TruncatedSeries divided_by(const TruncatedSeries& o) const { return times(o.inverse()); }
  TruncatedSeries exp() const;
  TruncatedSeries log() const;
  TruncatedSeries pow(const Rational& p) const;

  TruncatedSeries derivative(int var) const;
  // Antiderivative with zero constant of integration; drops terms past the cap.
  TruncatedSeries integral(int var) const;
  // x_var -> factor * x_var.
  TruncatedSeries scale_variable(int var, const F& factor) const;
  // x_var -> s, with s living in the same space.
  TruncatedSeries substitute(int var, const TruncatedSeries& s) const;
  // Re-expresses the series in another space over the same variables.
  TruncatedSeries truncated(SpacePtr target) const;

  Real max_abs() const;
  // Drops coefficients below tol in magnitude (float backend cleanup).
  TruncatedSeries chopped(const Real& tol) const;

 private:
  void check_space(const TruncatedSeries& o) const;

  SpacePtr space_;
  Terms terms_;
};

// Q with (z+w) Q = numerator on the retained range. Requires a weighted total
// degree cap over exactly {z, w}; Q is filled up to one degree below it.
template <class F>
TruncatedSeries<F> singular_quotient(const TruncatedSeries<F>& numerator, int zvar, int wvar);

using RationalSeries = TruncatedSeries<Rational>;
using ComplexSeries = TruncatedSeries<Complex>;

extern template class TruncatedSeries<Rational>;
extern template class TruncatedSeries<Complex>;
extern template TruncatedSeries<Rational> singular_quotient(const TruncatedSeries<Rational>&, int, int);
extern template TruncatedSeries<Complex> singular_quotient(const TruncatedSeries<Complex>&, int, int);

}  // namespace hgf
