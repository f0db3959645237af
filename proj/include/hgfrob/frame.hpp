#pragma once

#include <vector>

#include "hgfrob/frobenius.hpp"

namespace hgf {

struct FrameOptions {
  // Output index i takes the i-th entry of the default order at permutation[i].
  std::vector<int> permutation;
  // Flips the branch of sqrt(Delta_i) for the listed output indices.
  std::vector<bool> flip;
  // Values of u^i at the point for models without Euler data (default 0).
  std::vector<Complex> anchors;
};

// Semisimple-point data and its Taylor jets in the displacement variables
// d0..d{N-1} around the point (total degree cap = order).
struct CanonicalFrame {
  std::vector<Complex> point;
  int order = 0;
  SpacePtr space;

  std::vector<Complex> u;
  std::vector<Complex> delta;
  std::vector<Complex> sqrt_delta;
  Matrix<Complex> psi;  // psi(i, b) = Psi^i_b

  std::vector<ComplexSeries> u_series;
  std::vector<ComplexSeries> delta_series;
  std::vector<ComplexSeries> sqrt_delta_series;
  Matrix<ComplexSeries> psi_series;
  // du_series[a][i] = d u^i / d t^a
  std::vector<std::vector<ComplexSeries>> du_series;
  // idempotents[i][b] = b-th flat component of the i-th idempotent
  std::vector<std::vector<ComplexSeries>> idempotents;
  std::vector<bool> flipped;

  int dimension() const { return static_cast<int>(u.size()); }
  // d u^i / d t^a at the point.
  Complex du(int a, int i) const;
};

CanonicalFrame canonical_frame(const FrobeniusModel& model, const std::vector<Complex>& point, int order = 0,
                               const FrameOptions& options = {});

// Max residuals of the frame identities: sum_i Psi^i_a Psi^i_b = g_ab,
// Psi g^{-1} Psi^T = 1, e_i e_j = delta_ij e_i, sum e_i = 1, W diagonal zero.
struct FrameResiduals {
  Real metric;
  Real orthonormal;
  Real idempotent;
  Real unit;
  Real w_diagonal;
};
FrameResiduals frame_residuals(const FrobeniusModel& model, const CanonicalFrame& frame);

std::vector<std::string> displacement_names(int n);

// f with f(0) = 0 and df/dd_a = grad[a], for an exact gradient in the
// displacement variables.
ComplexSeries integrate_gradient(const std::vector<ComplexSeries>& grad);

}  // namespace hgf
