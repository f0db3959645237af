#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hgfrob/genus.hpp"

namespace hgf {

// The 1/z fundamental solution 1 + sum_k z^{-k} S_k with S_k = M_k g^{-1},
// M_k(a, b) = <phi_a, phi_b c^{k-1}>'. Normalised by S_k(base) = 0.
struct Calibration {
  std::vector<Rational> base;
  int K = 0;
  Matrix<Rational> metric;
  Matrix<Rational> metric_inverse;
  std::vector<Matrix<Expression>> M;  // M[0] = g, ..., M[K]
};

// Symbolic antidifferentiation of d_a M_k = C_a M_{k-1}; throws
// ValidationError when an antiderivative leaves the expression class or the
// result fails to reproduce the gradient (non-integrable data).
Calibration compute_calibration(const FrobeniusModel& model, const std::vector<Rational>& base, int K);

// M_0..M_K evaluated at a point.
std::vector<Matrix<Complex>> calibration_values(const Calibration& cal, const std::vector<Complex>& point);
// max_k |sum_{p+q=k} (-1)^p M_p^T g^{-1} M_q| for 1 <= k <= K.
Real calibration_unitarity(const Calibration& cal, const std::vector<Complex>& point);

// tau[k][a] = t_k^a for k = 0..Kmax.
using CurvePoint = std::vector<std::vector<Complex>>;

struct CriticalPoint {
  std::vector<Complex> t;
  int iterations = 0;
  Real residual = 0;
};

// Newton solve of t = t_0 + g^{-1} sum_{k>=1} M_k(t) t_k starting at t_0.
CriticalPoint critical_point(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau);

// f_nu(t) = <phi_nu, 1, tau(c) - c>(t) = g(t_0 - t)_nu + sum_{k>=1} (M_k(t) t_k)_nu,
// and its derivatives along the unit: jets[m][nu] = d_1^m f_nu for m <= mmax.
std::vector<std::vector<Complex>> unit_jets(const Calibration& cal, const CurvePoint& tau,
                                            const std::vector<Matrix<Complex>>& values, const std::vector<Complex>& t,
                                            int unit_index, int mmax);

// g^{ae} <phi_e, phi_b, 1, c - tau(c)>(t), the inverse of [d t / d t_0] at the critical point.
Matrix<Complex> inverse_jacobian(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau,
                                 const std::vector<Complex>& t);

struct Genus0Descendents {
  std::vector<Complex> t_star;
  Complex F0;
  // first[m][a] = dF0/dt_m^a, second[{m, l}](a, b) = <phi_a c^m, phi_b c^l>'(t*)
  std::vector<std::vector<Complex>> first;
  std::map<std::pair<int, int>, Matrix<Complex>> second;
};

// Needs cal.K >= 2 max(Kmax, 1) + 1.
Genus0Descendents genus0_descendents(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau);

struct DescendentFrame {
  std::vector<Complex> t_star;
  CanonicalFrame frame;
  RSeries r;
  EdgeTailData edges;  // V, Delta, T at t*
  std::vector<Complex> D;
  std::vector<Complex> sqrt_D;
  std::vector<std::vector<Complex>> T;  // T[i][k], k = 0..K+1
  Real criticality_residual = 0;        // z^0 coefficient
};

// Bold D, T from the one-point expansion at the critical point, with R
// truncated at K.
DescendentFrame bold_quantities(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau, int K,
                                const GenusOptions& options = {});

GraphInput<Complex> bold_input(const DescendentFrame& frame);

struct DescendentResult {
  Complex value;
  DescendentFrame frame;
};

// Graph sum with (V, Delta, T) replaced by the bold quantities; g >= 2.
DescendentResult descendent_potential(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau, int g,
                                      const GenusOptions& options = {});

// Components of dF^1 along t_k^a (index k * N + a) from
// sum_i (V_00^ii/2 du_i + dD_i/(48 D_i)); D by central differences of step h.
std::vector<Complex> genus1_descendent_bold(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau,
                                            const Real& h, const GenusOptions& options = {});
// The same components from d{F^1(t(tau)) + ln det[dt/dt_0]/24}.
std::vector<Complex> genus1_descendent_det(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau,
                                           const Real& h, const GenusOptions& options = {});

// d t* / d t_k^a, column k * N + a.
Matrix<Complex> critical_point_derivative(const FrobeniusModel& model, const Calibration& cal, const CurvePoint& tau,
                                          const std::vector<Complex>& t);

// X = pt: sum over insertions of <tau_0^m0 prod tau_k>_g t^.../mult! with
// the tau_1 insertions resummed by the dilaton equation; stops after two
// consecutive shells in the insertion count below cutoff.
Complex pt_descendent_direct(int g, const CurvePoint& tau, const Real& cutoff, int max_insertions = 400);

}  // namespace hgf
