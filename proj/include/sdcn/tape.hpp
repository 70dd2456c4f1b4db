#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "sdcn/graph.hpp"
#include "sdcn/matrix.hpp"

namespace sdcn {

// Records the primitive ops of one forward pass and replays their
// hand-derived adjoints in exact reverse order. Gradients accumulate into
// per-node buffers; read them through grad() after backward().
//
// One tape per training step; a tape is single-threaded and backward() may
// run only once. Matrices passed by pointer (spmm operand, loss targets)
// must outlive the backward pass.
class GradTape {
public:
    struct Var {
        std::size_t id = static_cast<std::size_t>(-1);
    };

    Var leaf(DenseMatrix value);

    const DenseMatrix& value(Var v) const { return nodes_[v.id].value; }
    const DenseMatrix& grad(Var v) const;

    Var matmul(Var a, Var b);
    Var spmm(const CsrMatrix* m, Var d);
    Var add_row_bias(Var a, Var bias);
    Var relu(Var a);
    Var row_softmax(Var a);
    Var axpby(double alpha, Var a, double beta, Var b);

    // K_ij = (1 + ||h_i - c_j||^2 / dof)^{-(dof+1)/2}; gradients reach both
    // the embeddings and the centers.
    Var student_t_kernel(Var h, Var centers, double dof);
    Var row_normalize(Var a);

    // Scalar losses (1x1 nodes). Targets are constants: no gradient flows
    // into them.
    Var mse_half_mean(const DenseMatrix* target, Var pred);
    Var kl_const_target(const DenseMatrix* target, Var q);
    Var weighted_sum(std::span<const std::pair<double, Var>> terms);

    void backward(Var root);

private:
    struct Node {
        DenseMatrix value;
        DenseMatrix grad;
        std::function<void(GradTape&)> back;  // empty for leaves
    };

    Var push(DenseMatrix value, std::function<void(GradTape&)> back);
    DenseMatrix& grad_buf(std::size_t id) { return nodes_[id].grad; }

    std::vector<Node> nodes_;
    bool backward_done_ = false;
};

// Loss value clamp applied before logarithms in KL terms.
inline constexpr double kLogClamp = 1e-12;

}  // namespace sdcn
