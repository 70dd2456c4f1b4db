#pragma once

#include <vector>

#include "sdcn/matrix.hpp"

namespace sdcn {

// Adaptive-moment gradient descent. One instance owns the moment buffers of
// a fixed parameter list; call step() with params and grads in that order.
class Adam {
public:
    explicit Adam(double lr) : lr_(lr) {}

    void step(const std::vector<DenseMatrix*>& params,
              const std::vector<const DenseMatrix*>& grads);

    double learning_rate() const { return lr_; }

private:
    double lr_;
    double beta1_ = 0.9;
    double beta2_ = 0.999;
    double eps_ = 1e-8;
    long step_count_ = 0;
    std::vector<DenseMatrix> m_;
    std::vector<DenseMatrix> v_;
};

}  // namespace sdcn
