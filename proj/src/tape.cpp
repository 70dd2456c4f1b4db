#include "sdcn/tape.hpp"

#include <cmath>
#include <string>

#include "sdcn/errors.hpp"

namespace sdcn {

GradTape::Var GradTape::push(DenseMatrix value, std::function<void(GradTape&)> back) {
    if (backward_done_) throw NumericError("GradTape: cannot record after backward()");
    nodes_.push_back(Node{std::move(value), DenseMatrix(), std::move(back)});
    return Var{nodes_.size() - 1};
}

GradTape::Var GradTape::leaf(DenseMatrix value) { return push(std::move(value), nullptr); }

const DenseMatrix& GradTape::grad(Var v) const {
    if (!backward_done_) throw NumericError("GradTape: grad read before backward()");
    return nodes_[v.id].grad;
}

GradTape::Var GradTape::matmul(Var a, Var b) {
    DenseMatrix out = sdcn::matmul(value(a), value(b));
    const std::size_t ia = a.id, ib = b.id;
    const std::size_t out_id = nodes_.size();
    return push(std::move(out), [ia, ib, out_id](GradTape& t) {
        const DenseMatrix& g = t.nodes_[out_id].grad;
        const DenseMatrix da = matmul_nt(g, t.nodes_[ib].value);  // G * B^T
        const DenseMatrix db = matmul_tn(t.nodes_[ia].value, g);  // A^T * G
        DenseMatrix& ga = t.grad_buf(ia);
        DenseMatrix& gb = t.grad_buf(ib);
        for (std::size_t i = 0; i < da.size(); ++i) ga.data()[i] += da.data()[i];
        for (std::size_t i = 0; i < db.size(); ++i) gb.data()[i] += db.data()[i];
    });
}

GradTape::Var GradTape::spmm(const CsrMatrix* m, Var d) {
    DenseMatrix out = sdcn::spmm(*m, value(d));
    const std::size_t id = d.id;
    Var result{nodes_.size()};
    const std::size_t out_id = result.id;
    push(std::move(out), [m, id, out_id](GradTape& t) {
        const DenseMatrix adj = spmm_transposed(*m, t.nodes_[out_id].grad);
        DenseMatrix& dd = t.grad_buf(id);
        for (std::size_t i = 0; i < dd.size(); ++i) dd.data()[i] += adj.data()[i];
    });
    return result;
}

GradTape::Var GradTape::add_row_bias(Var a, Var bias) {
    DenseMatrix out = sdcn::add_row_bias(value(a), value(bias));
    const std::size_t ia = a.id, ibias = bias.id;
    const std::size_t out_id = nodes_.size();
    return push(std::move(out), [ia, ibias, out_id](GradTape& t) {
        const DenseMatrix& g = t.nodes_[out_id].grad;
        DenseMatrix& da = t.grad_buf(ia);
        DenseMatrix& db = t.grad_buf(ibias);
        for (std::size_t i = 0; i < g.size(); ++i) da.data()[i] += g.data()[i];
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) db(0, j) += g(i, j);
    });
}

GradTape::Var GradTape::relu(Var a) {
    DenseMatrix out = sdcn::relu(value(a));
    const std::size_t ia = a.id;
    const std::size_t out_id = nodes_.size();
    return push(std::move(out), [ia, out_id](GradTape& t) {
        const DenseMatrix& g = t.nodes_[out_id].grad;
        const DenseMatrix& y = t.nodes_[out_id].value;
        DenseMatrix& da = t.grad_buf(ia);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (y.data()[i] > 0.0) da.data()[i] += g.data()[i];
    });
}

GradTape::Var GradTape::row_softmax(Var a) {
    DenseMatrix out = sdcn::row_softmax(value(a));
    const std::size_t ia = a.id;
    const std::size_t out_id = nodes_.size();
    return push(std::move(out), [ia, out_id](GradTape& t) {
        const DenseMatrix& g = t.nodes_[out_id].grad;
        const DenseMatrix& y = t.nodes_[out_id].value;
        DenseMatrix& da = t.grad_buf(ia);
        for (std::size_t i = 0; i < g.rows(); ++i) {
            double dot = 0.0;
            for (std::size_t j = 0; j < g.cols(); ++j) dot += g(i, j) * y(i, j);
            for (std::size_t j = 0; j < g.cols(); ++j)
                da(i, j) += y(i, j) * (g(i, j) - dot);
        }
    });
}

GradTape::Var GradTape::axpby(double alpha, Var a, double beta, Var b) {
    DenseMatrix out = sdcn::axpby(alpha, value(a), beta, value(b));
    const std::size_t ia = a.id, ib = b.id;
    const std::size_t out_id = nodes_.size();
    return push(std::move(out), [alpha, beta, ia, ib, out_id](GradTape& t) {
        const DenseMatrix& g = t.nodes_[out_id].grad;
        DenseMatrix& da = t.grad_buf(ia);
        DenseMatrix& db = t.grad_buf(ib);
        for (std::size_t i = 0; i < g.size(); ++i) {
            da.data()[i] += alpha * g.data()[i];
            db.data()[i] += beta * g.data()[i];
        }
    });
}

GradTape::Var GradTape::student_t_kernel(Var h, Var centers, double dof) {
    if (!(dof > 0.0)) throw ParameterError("student_t_kernel: dof must be positive");
    const DenseMatrix& hv = value(h);
    const DenseMatrix& cv = value(centers);
    if (hv.cols() != cv.cols())
        throw DimensionError("student_t_kernel: embedding width " + std::to_string(hv.cols()) +
                             " vs center width " + std::to_string(cv.cols()));
    const std::size_t n = hv.rows(), k = cv.rows();
    DenseMatrix kernel(n, k);
    // base_ij = 1 + d_ij/dof, kept for the adjoint.
    DenseMatrix base(n, k);
    const double expo = -(dof + 1.0) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double d = 0.0;
            for (std::size_t c = 0; c < hv.cols(); ++c) {
                const double diff = hv(i, c) - cv(j, c);
                d += diff * diff;
            }
            base(i, j) = 1.0 + d / dof;
            kernel(i, j) = std::pow(base(i, j), expo);
        }
    }
    const std::size_t ih = h.id, ic = centers.id;
    const std::size_t out_id = nodes_.size();
    return push(std::move(kernel), [ih, ic, dof, base = std::move(base), out_id](GradTape& t) {
        const DenseMatrix& g = t.nodes_[out_id].grad;
        const DenseMatrix& kv = t.nodes_[out_id].value;
        const DenseMatrix& hv = t.nodes_[ih].value;
        const DenseMatrix& cv = t.nodes_[ic].value;
        DenseMatrix& dh = t.grad_buf(ih);
        DenseMatrix& dc = t.grad_buf(ic);
        // dK/dd = -(dof+1)/(2 dof) * K / base; dd/dh_i = 2 (h_i - c_j).
        const double factor = -(dof + 1.0) / (2.0 * dof);
        for (std::size_t i = 0; i < g.rows(); ++i) {
            for (std::size_t j = 0; j < g.cols(); ++j) {
                const double s = 2.0 * g(i, j) * factor * kv(i, j) / base(i, j);
                for (std::size_t c = 0; c < hv.cols(); ++c) {
                    const double diff = hv(i, c) - cv(j, c);
                    dh(i, c) += s * diff;
                    dc(j, c) -= s * diff;
                }
            }
        }
    });
}

GradTape::Var GradTape::row_normalize(Var a) {
    DenseMatrix out = sdcn::row_normalize(value(a));
    const std::size_t ia = a.id;
    const std::size_t out_id = nodes_.size();
    return push(std::move(out), [ia, out_id](GradTape& t) {
        const DenseMatrix& g = t.nodes_[out_id].grad;
        const DenseMatrix& y = t.nodes_[out_id].value;
        const DenseMatrix& x = t.nodes_[ia].value;
        DenseMatrix& da = t.grad_buf(ia);
        for (std::size_t i = 0; i < g.rows(); ++i) {
            double sum = 0.0, dot = 0.0;
            for (std::size_t j = 0; j < g.cols(); ++j) {
                sum += x(i, j);
                dot += g(i, j) * y(i, j);
            }
            for (std::size_t j = 0; j < g.cols(); ++j) da(i, j) += (g(i, j) - dot) / sum;
        }
    });
}

GradTape::Var GradTape::mse_half_mean(const DenseMatrix* target, Var pred) {
    const DenseMatrix& pv = value(pred);
    if (!target->same_shape(pv)) throw DimensionError("mse_half_mean: shape mismatch");
    const double n = static_cast<double>(pv.rows());
    double loss = 0.0;
    for (std::size_t i = 0; i < pv.size(); ++i) {
        const double diff = target->data()[i] - pv.data()[i];
        loss += diff * diff;
    }
    DenseMatrix out(1, 1);
    out(0, 0) = loss / (2.0 * n);
    const std::size_t ip = pred.id;
    const std::size_t out_id = nodes_.size();
    return push(std::move(out), [target, ip, n, out_id](GradTape& t) {
        const double g = t.nodes_[out_id].grad(0, 0);
        const DenseMatrix& pv = t.nodes_[ip].value;
        DenseMatrix& dp = t.grad_buf(ip);
        for (std::size_t i = 0; i < pv.size(); ++i)
            dp.data()[i] += g * (pv.data()[i] - target->data()[i]) / n;
    });
}

GradTape::Var GradTape::kl_const_target(const DenseMatrix* target, Var q) {
    const DenseMatrix& qv = value(q);
    if (!target->same_shape(qv)) throw DimensionError("kl_const_target: shape mismatch");
    double loss = 0.0;
    for (std::size_t i = 0; i < qv.size(); ++i) {
        const double p = target->data()[i];
        if (p <= 0.0) continue;
        const double qc = std::max(qv.data()[i], kLogClamp);
        const double pc = std::max(p, kLogClamp);
        loss += p * (std::log(pc) - std::log(qc));
    }
    DenseMatrix out(1, 1);
    out(0, 0) = loss;
    const std::size_t iq = q.id;
    const std::size_t out_id = nodes_.size();
    return push(std::move(out), [target, iq, out_id](GradTape& t) {
        const double g = t.nodes_[out_id].grad(0, 0);
        const DenseMatrix& qv = t.nodes_[iq].value;
        DenseMatrix& dq = t.grad_buf(iq);
        for (std::size_t i = 0; i < qv.size(); ++i) {
            const double p = target->data()[i];
            // Clamped entries sit on the flat part of max(q, clamp).
            if (p > 0.0 && qv.data()[i] > kLogClamp) dq.data()[i] -= g * p / qv.data()[i];
        }
    });
}

GradTape::Var GradTape::weighted_sum(std::span<const std::pair<double, Var>> terms) {
    double total = 0.0;
    std::vector<std::pair<double, std::size_t>> refs;
    refs.reserve(terms.size());
    for (const auto& [w, v] : terms) {
        const DenseMatrix& tv = value(v);
        if (tv.rows() != 1 || tv.cols() != 1)
            throw DimensionError("weighted_sum: terms must be scalars");
        total += w * tv(0, 0);
        refs.emplace_back(w, v.id);
    }
    DenseMatrix out(1, 1);
    out(0, 0) = total;
    const std::size_t out_id = nodes_.size();
    return push(std::move(out), [refs = std::move(refs), out_id](GradTape& t) {
        const double g = t.nodes_[out_id].grad(0, 0);
        for (const auto& [w, id] : refs) t.grad_buf(id)(0, 0) += w * g;
    });
}

void GradTape::backward(Var root) {
    if (backward_done_) throw NumericError("GradTape: backward() may run only once");
    const DenseMatrix& rv = value(root);
    if (rv.rows() != 1 || rv.cols() != 1)
        throw DimensionError("backward: root must be a scalar node");
    if (!std::isfinite(rv(0, 0))) throw NumericError("backward: non-finite loss");

    for (Node& n : nodes_) n.grad = DenseMatrix(n.value.rows(), n.value.cols());
    backward_done_ = true;
    nodes_[root.id].grad(0, 0) = 1.0;
    for (std::size_t i = root.id + 1; i-- > 0;) {
        if (nodes_[i].back) nodes_[i].back(*this);
    }
}

}  // namespace sdcn
