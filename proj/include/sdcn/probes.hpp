#pragma once

#include <cstddef>
#include <vector>

#include "sdcn/graph.hpp"
#include "sdcn/matrix.hpp"

namespace sdcn {

// Numerical checks of the two propagation claims. Both run in the identity
// configuration: linear activation, identity weights, no biases, which
// requires x and every hidden matrix to share one width.

struct UnrolledPropagation {
    DenseMatrix iterated;     // depth delivery+propagation steps
    DenseMatrix closed_form;  // smoothing term plus the order-weighted sum
    double max_abs_diff = 0.0;
};

// Iterates z <- A_hat * ((1-eps) z + eps h) for `depth` steps, feeding the
// hidden stack so that the result telescopes to
//   (1-eps)^depth A_hat^depth x
//     + eps * sum_l (1-eps)^(l-1) A_hat^l hidden[l-1],
// and evaluates that closed form independently. hidden must hold at least
// `depth` matrices.
UnrolledPropagation probe_unrolled_propagation(const DenseMatrix& x,
                                               const std::vector<DenseMatrix>& hidden,
                                               const SparseGraph& g, double epsilon,
                                               std::size_t depth);

struct SecondOrderBound {
    double distance = 0.0;       // representation distance after one propagation
    double bound = 0.0;          // sum of the three terms below
    double term_self = 0.0;      // self contributions
    double term_common = 0.0;    // shared-neighbor contribution
    double term_noncommon = 0.0; // disjoint-neighbor contributions
};

// One-step propagation distance between nodes i and j against the upper
// bound built from the common / non-common neighbor decomposition
// (self-loops included, degrees counted with the self-loop).
SecondOrderBound probe_second_order_bound(const DenseMatrix& h, const SparseGraph& g,
                                          std::size_t i, std::size_t j);

}  // namespace sdcn
