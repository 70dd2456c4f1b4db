#include "sdcn/gcn.hpp"

#include <cmath>
#include <string>

#include "sdcn/errors.hpp"
#include "sdcn/rng.hpp"

namespace sdcn {

DenseMatrix deliver(const DenseMatrix& z, const DenseMatrix& h, double epsilon) {
    if (!z.same_shape(h)) throw DimensionError("deliver: shape mismatch");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw ParameterError("deliver: epsilon must lie in [0, 1]");
    return axpby(1.0 - epsilon, z, epsilon, h);
}

std::vector<DenseMatrix*> GcnParams::tensors() {
    std::vector<DenseMatrix*> out;
    for (DenseMatrix& w : weights) out.push_back(&w);
    return out;
}

std::vector<const DenseMatrix*> GcnParams::tensors() const {
    std::vector<const DenseMatrix*> out;
    for (const DenseMatrix& w : weights) out.push_back(&w);
    return out;
}

GcnParams make_gcn(const std::vector<std::size_t>& widths, std::size_t clusters,
                   std::uint64_t seed) {
    if (widths.size() < 2) throw ParameterError("make_gcn: need input and one layer width");
    if (clusters < 2) throw ParameterError("make_gcn: need at least two clusters");
    Rng rng(mix_seed(seed, 0x6c1));
    GcnParams p;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        const double limit = std::sqrt(6.0 / static_cast<double>(widths[l] + widths[l + 1]));
        DenseMatrix w(widths[l], widths[l + 1]);
        for (std::size_t i = 0; i < w.size(); ++i) w.data()[i] = uniform_real(rng, -limit, limit);
        p.weights.push_back(std::move(w));
    }
    const double limit = std::sqrt(6.0 / static_cast<double>(widths.back() + clusters));
    DenseMatrix w(widths.back(), clusters);
    for (std::size_t i = 0; i < w.size(); ++i) w.data()[i] = uniform_real(rng, -limit, limit);
    p.weights.push_back(std::move(w));
    return p;
}

GcnForward gcn_forward(const DenseMatrix& x, const std::vector<DenseMatrix>& hidden,
                       const CsrMatrix* adjacency, const GcnParams& p, double epsilon) {
    if (hidden.size() != p.depth())
        throw DimensionError("gcn_forward: expected " + std::to_string(p.depth()) +
                             " encoder layers, got " + std::to_string(hidden.size()));
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw ParameterError("gcn_forward: epsilon must lie in [0, 1]");

    auto propagate = [&](const DenseMatrix& m) {
        return adjacency != nullptr ? spmm(*adjacency, m) : m;
    };

    GcnForward out;
    DenseMatrix z = relu(matmul(propagate(x), p.weights[0]));
    out.layers.push_back(z);
    for (std::size_t l = 1; l < p.depth(); ++l) {
        z = relu(matmul(propagate(deliver(z, hidden[l - 1], epsilon)), p.weights[l]));
        out.layers.push_back(z);
    }
    out.assignment = row_softmax(
        matmul(propagate(deliver(z, hidden.back(), epsilon)), p.weights.back()));
    return out;
}

GcnVars gcn_leaves(GradTape& tape, const GcnParams& p) {
    GcnVars vars;
    for (const DenseMatrix& w : p.weights) vars.weights.push_back(tape.leaf(w));
    return vars;
}

GcnForwardVars gcn_forward_on_tape(GradTape& tape, GradTape::Var x,
                                   const std::vector<GradTape::Var>& hidden,
                                   const CsrMatrix* adjacency, const GcnVars& vars,
                                   double epsilon) {
    const std::size_t depth = vars.weights.size() - 1;
    if (hidden.size() != depth)
        throw DimensionError("gcn_forward_on_tape: expected " + std::to_string(depth) +
                             " encoder layers, got " + std::to_string(hidden.size()));
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw ParameterError("gcn_forward_on_tape: epsilon must lie in [0, 1]");

    auto propagate = [&](GradTape::Var v) {
        return adjacency != nullptr ? tape.spmm(adjacency, v) : v;
    };
    auto mix = [&](GradTape::Var z, GradTape::Var h) {
        return tape.axpby(1.0 - epsilon, z, epsilon, h);
    };

    GcnForwardVars out;
    GradTape::Var z = tape.relu(tape.matmul(propagate(x), vars.weights[0]));
    out.layers.push_back(z);
    for (std::size_t l = 1; l < depth; ++l) {
        z = tape.relu(tape.matmul(propagate(mix(z, hidden[l - 1])), vars.weights[l]));
        out.layers.push_back(z);
    }
    out.assignment = tape.row_softmax(
        tape.matmul(propagate(mix(z, hidden.back())), vars.weights.back()));
    return out;
}

}  // namespace sdcn
