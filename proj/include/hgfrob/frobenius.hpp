#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hgfrob/expression.hpp"
#include "hgfrob/linalg.hpp"

namespace hgf {

// E = sum_a (matrix(a,b) t^b + shift(a)) d/dt^a.
struct EulerData {
  Matrix<Rational> matrix;
  std::vector<Rational> shift;
  Rational conformal_dimension;
};

class FrobeniusModel {
 public:
  FrobeniusModel(Matrix<Rational> metric, Expression potential, int unit_index = 0,
                 std::optional<EulerData> euler = std::nullopt, std::string name = "");

  int dimension() const { return metric_.rows(); }
  const Matrix<Rational>& metric() const { return metric_; }
  const Matrix<Rational>& metric_inverse() const { return metric_inverse_; }
  const Expression& potential() const { return potential_; }
  int unit_index() const { return unit_index_; }
  const std::optional<EulerData>& euler() const { return euler_; }
  bool conformal() const { return euler_.has_value(); }
  const std::string& name() const { return name_; }

  // d^3 F / dt^a dt^b dt^c as an expression (cached symmetric lookup).
  const Expression& third_derivative(int a, int b, int c) const;
  // E^a(t) at a point.
  std::vector<Complex> euler_field(const std::vector<Complex>& point) const;

 private:
  Matrix<Rational> metric_;
  Matrix<Rational> metric_inverse_;
  Expression potential_;
  int unit_index_;
  std::optional<EulerData> euler_;
  std::string name_;
  std::vector<Expression> third_;
};

// L[a](b,c) = F_{abc} at point.
std::vector<Matrix<Complex>> third_derivatives(const FrobeniusModel& model, const std::vector<Complex>& point);
// Taylor series of F_{abc} around point, in the displacement variables of space.
std::vector<Matrix<ComplexSeries>> third_derivative_series(const FrobeniusModel& model,
                                                           const std::vector<Complex>& point, const SpacePtr& space);

// C[a](g,b) = F_{a b m} g^{m g}: the matrix of multiplication by phi_a.
std::vector<Matrix<Complex>> structure_constants(const FrobeniusModel& model, const std::vector<Complex>& point);

Real check_wdvv(const FrobeniusModel& model, const std::vector<Complex>& point);
// max |F_{0ab} - g_{ab}|
Real unit_residual(const FrobeniusModel& model, const std::vector<Complex>& point);
// Homogeneity of the third derivatives together with the constraints on the
// metric and the unit. Throws ValidationError without Euler data.
Real euler_residual(const FrobeniusModel& model, const std::vector<Complex>& point);

namespace models {

FrobeniusModel point();
// F = t0^2 t1/2 + c t1^{(3-d)/(1-d)}, or t0^2 t1/2 + c e^{t1} for d = 1.
FrobeniusModel two_primary(const Rational& d, const Rational& c = Rational(1));
// Three primaries of conformal dimension 1/2.
FrobeniusModel a3();

}  // namespace models

std::vector<Complex> to_complex(const std::vector<Rational>& v);

}  // namespace hgf
