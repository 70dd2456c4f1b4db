#pragma once

#include <cstdint>
#include <vector>

#include "sdcn/graph.hpp"
#include "sdcn/matrix.hpp"
#include "sdcn/tape.hpp"

namespace sdcn {

// Convex combination (1 - epsilon) * z + epsilon * h that injects encoder
// representations into graph propagation.
DenseMatrix deliver(const DenseMatrix& z, const DenseMatrix& h, double epsilon);

// Graph convolution weights: one matrix per propagation layer plus the final
// classification layer. No biases.
struct GcnParams {
    std::vector<DenseMatrix> weights;
    std::size_t depth() const { return weights.empty() ? 0 : weights.size() - 1; }
    std::vector<DenseMatrix*> tensors();
    std::vector<const DenseMatrix*> tensors() const;
};

// widths = [input, layer widths...]; layer widths must match the delivered
// encoder layer widths. Adds the (last width -> clusters) classifier.
GcnParams make_gcn(const std::vector<std::size_t>& widths, std::size_t clusters,
                   std::uint64_t seed);

struct GcnForward {
    std::vector<DenseMatrix> layers;  // hidden propagation outputs
    DenseMatrix assignment;           // row-stochastic predictive distribution
};

// hidden must hold exactly depth() encoder outputs, matched layer by layer.
// adjacency == nullptr replaces propagation with the identity (the MLP
// variant). epsilon must lie in [0, 1].
GcnForward gcn_forward(const DenseMatrix& x, const std::vector<DenseMatrix>& hidden,
                       const CsrMatrix* adjacency, const GcnParams& p, double epsilon);

struct GcnVars {
    std::vector<GradTape::Var> weights;
};

GcnVars gcn_leaves(GradTape& tape, const GcnParams& p);

struct GcnForwardVars {
    std::vector<GradTape::Var> layers;
    GradTape::Var assignment;
};

GcnForwardVars gcn_forward_on_tape(GradTape& tape, GradTape::Var x,
                                   const std::vector<GradTape::Var>& hidden,
                                   const CsrMatrix* adjacency, const GcnVars& vars,
                                   double epsilon);

}  // namespace sdcn
