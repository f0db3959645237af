#pragma once

#include <functional>
#include <vector>

#include "hgfrob/graphs.hpp"
#include "hgfrob/rmatrix.hpp"

namespace hgf {

// Point data entering the Wick expansion, over an arbitrary scalar type so
// that synthetic rational data can be summed exactly.
template <class F>
struct GraphInput {
  int N = 0;
  std::vector<F> delta;               // Delta_i
  std::vector<std::vector<F>> tail;   // tail[i][k] = T^i_k
  // W^{ij}_{kl} = V^{ij}_{kl} sqrt(Delta_i) sqrt(Delta_j); must satisfy
  // W^{ij}_{kl} = W^{ji}_{lk}.
  std::function<F(int, int, int, int)> weight;
};

GraphInput<Complex> graph_input(const EdgeTailData& data);

// Sum over canonical labelings and half-edge powers, divided by |Aut|.
template <class F>
F evaluate_graph(const StableGraph& graph, const GraphInput<F>& input);

// F^g as the graph sum; optionally reports each graph's contribution.
template <class F>
F graph_sum(int g, const GraphInput<F>& input, std::vector<F>* per_graph = nullptr);

// F^g from log of the Gaussian contraction of exp(sum of vertex potentials),
// computed on truncated series without any graph enumeration.
template <class F>
F wick_oracle(int g, const GraphInput<F>& input);

// Random rational data with nonzero Delta, tails T_2..T_{3g-1} and a
// symmetric weight table, reproducible from the seed.
GraphInput<Rational> synthetic_graph_input(int n, int g, unsigned seed);
// The same data over the float backend.
GraphInput<Complex> to_complex_input(const GraphInput<Rational>& in);

struct GenusOptions {
  RMatrixOptions r;
  FrameOptions frame;
};

struct GenusResult {
  Complex value;
  std::vector<StableGraph> graphs;
  std::vector<Complex> per_graph;
  Real unitarity = 0;
  Real consistency = 0;
  Real t_residual = 0;
};

GenusResult genus_potential(const FrobeniusModel& model, const std::vector<Complex>& point, int g,
                            const GenusOptions& options = {});

// Edge/tail data with R truncated at K, the order F^g needs being 3g - 2.
EdgeTailData point_data(const FrobeniusModel& model, const std::vector<Complex>& point, int K,
                        const GenusOptions& options = {});

// Components along dt^a of sum_i [ (R_1)_ii/2 du^i + dDelta_i/(48 Delta_i) ].
std::vector<Complex> genus1_differential(const CanonicalFrame& frame, const RSeries& r);
// Same one-form as series in the frame displacement variables (cap order-1
// where order = min(frame order, R truncation)).
std::vector<ComplexSeries> genus1_form_series(const CanonicalFrame& frame, const RSeries& r);
// max |d_a w_b - d_b w_a| over the series coefficients.
Real genus1_curl(const std::vector<ComplexSeries>& form);

}  // namespace hgf

namespace hgf {

// max_{a<b} |d_a w_b - d_b w_a| for the genus-1 one-form, with the
// derivatives taken by an eighth-order central difference of step h.
Real genus1_fd_curl(const FrobeniusModel& model, const std::vector<Complex>& point, const Real& h,
                    const GenusOptions& options = {});

}  // namespace hgf
