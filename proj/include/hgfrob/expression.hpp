#pragma once

// Sums of terms  coeff * prod params * prod t_a^{e_a} * exp(sum c_a t_a)
// in flat coordinates, with rational exponents and exponential rates.

#include <map>
#include <string>
#include <vector>

#include "hgfrob/scalar.hpp"
#include "hgfrob/series.hpp"

namespace hgf {

struct ExprTerm {
  Rational coeff;
  std::map<std::string, int> params;
  std::vector<Rational> mono;
  std::vector<Rational> rate;
};

class Expression {
 public:
  Expression() = default;
  explicit Expression(int variables) : n_(variables) {}

  static Expression constant(int variables, const Rational& c);
  static Expression variable(int variables, int index);
  static Expression parameter(int variables, const std::string& name);
  static Expression from_terms(int variables, std::vector<ExprTerm> terms);

  int variables() const { return n_; }
  const std::vector<ExprTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_parameters() const;

  Expression& operator+=(const Expression& o);
  Expression& operator-=(const Expression& o);
  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator*(Expression a, const Rational& c);
  friend bool operator==(const Expression& a, const Expression& b);

  Expression diff(int var) const;
  // Term-wise antiderivative with zero constant; throws ValidationError for
  // t^{-1}, or for a non-integer or negative power times an exponential in var.
  Expression antidiff(int var) const;
  // Replaces named parameters by values; unknown names are left in place.
  Expression bind(const std::map<std::string, Rational>& values) const;
  // Exact value at a rational point; throws ValidationError when a term is
  // irrational there (exponential at a nonzero argument, fractional power).
  Rational evaluate_exact(const std::vector<Rational>& point) const;

  Complex evaluate(const std::vector<Complex>& point) const;
  // Taylor expansion around point in the displacement variables of space
  // (one series variable per flat coordinate, in order).
  ComplexSeries taylor(const std::vector<Complex>& point, const SpacePtr& space) const;

 private:
  void normalize();
  void check_params() const;

  int n_ = 0;
  std::vector<ExprTerm> terms_;
};

using Jet = std::map<std::vector<int>, Complex>;

// All partial derivatives of expr up to the given total order at point.
Jet evaluate_jet(const Expression& expr, const std::vector<Complex>& point, int order);

std::string to_string(const Expression& e);

}  // namespace hgf
