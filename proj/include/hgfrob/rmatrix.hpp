#pragma once

#include <array>
#include <map>
#include <vector>

#include "hgfrob/frame.hpp"

namespace hgf {

enum class RMode { conformal, constants };

// a[k-1][i] multiplies z^{2k-1} in the exponent of the i-th diagonal entry.
using TwistConstants = std::vector<std::vector<Complex>>;

struct RSeries {
  int K = 0;
  RMode mode = RMode::conformal;
  std::vector<Matrix<Complex>> R;  // R[0] = 1, ..., R[K] at the point
  // Taylor jets of R_k in the frame displacement variables (cap K - k);
  // empty after a twist of a series computed without jets.
  std::vector<Matrix<ComplexSeries>> jets;
  // Worst relative residual of the per-direction off-diagonal solves and of
  // the diagonal differential equation.
  Real consistency_residual = 0;
};

struct RMatrixOptions {
  RMode mode = RMode::conformal;
  // Constants mode only: odd-order diagonal constants (default 0).
  TwistConstants a;
};

// Requires a frame of order >= K.
RSeries compute_R(const FrobeniusModel& model, const CanonicalFrame& frame, int K, const RMatrixOptions& options = {});

// R(z) -> diag(exp(sum_k a_k z^{2k-1})) R(z), truncated at K.
RSeries twist_R(const RSeries& r, const TwistConstants& a);

// max_k max |sum_{p+q=k} (-1)^q R_p R_q^T| for 1 <= k <= K.
Real unitarity_residual(const RSeries& r);

// Exact Bernoulli numbers B_0..B_n (B_1 = -1/2).
std::vector<Rational> bernoulli_numbers(int n);

// a_k^i = -N_{2k-1}(1/chi^i) B_{2k} / ((2k-1) 2k) for k = 1..count; chi[i]
// lists the characters at the i-th fixed point.
std::vector<std::vector<Rational>> bernoulli_constants(const std::vector<std::vector<Rational>>& chi, int count);

// Edge coefficients V^{ij}_{kl} (k + l <= K - 1) and tail values T^i_k
// (2 <= k <= K + 1), together with the point data they were computed from.
struct EdgeTailData {
  int N = 0;
  int K = 0;
  std::vector<Complex> u;
  std::vector<Complex> delta;
  std::vector<Complex> sqrt_delta;
  std::map<std::array<int, 4>, Complex> V;
  std::vector<std::vector<Complex>> T;  // T[i][k], k = 0..K+1
  Real t_residual = 0;                  // residual of the T_0 = T_1 = 0 extraction

  Complex v(int i, int j, int k, int l) const;
  // V^{ij}_{kl} sqrt(Delta_i) sqrt(Delta_j), invariant under branch flips.
  Complex w(int i, int j, int k, int l) const;
};

EdgeTailData compute_V(const RSeries& r, const CanonicalFrame& frame);
void compute_T(EdgeTailData& data, const RSeries& r);
EdgeTailData edge_tail_data(const RSeries& r, const CanonicalFrame& frame);

}  // namespace hgf
