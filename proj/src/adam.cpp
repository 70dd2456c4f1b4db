#include "sdcn/adam.hpp"

#include <cmath>

#include "sdcn/errors.hpp"

namespace sdcn {

void Adam::step(const std::vector<DenseMatrix*>& params,
                const std::vector<const DenseMatrix*>& grads) {
    if (params.size() != grads.size()) throw ParameterError("Adam: params/grads size mismatch");
    if (m_.empty()) {
        for (const DenseMatrix* p : params) {
            m_.emplace_back(p->rows(), p->cols());
            v_.emplace_back(p->rows(), p->cols());
        }
    }
    if (m_.size() != params.size()) throw ParameterError("Adam: parameter list changed");

    ++step_count_;
    const double bc1 = 1.0 - std::pow(beta1_, step_count_);
    const double bc2 = 1.0 - std::pow(beta2_, step_count_);
    for (std::size_t t = 0; t < params.size(); ++t) {
        DenseMatrix& p = *params[t];
        const DenseMatrix& g = *grads[t];
        if (!p.same_shape(g)) throw DimensionError("Adam: grad shape mismatch");
        for (std::size_t i = 0; i < p.size(); ++i) {
            double& m = m_[t].data()[i];
            double& v = v_[t].data()[i];
            const double gi = g.data()[i];
            m = beta1_ * m + (1.0 - beta1_) * gi;
            v = beta2_ * v + (1.0 - beta2_) * gi * gi;
            p.data()[i] -= lr_ * (m / bc1) / (std::sqrt(v / bc2) + eps_);
        }
    }
}

}  // namespace sdcn
