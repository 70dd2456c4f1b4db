#include "sdcn/selfsup.hpp"

#include <cmath>
#include <string>

#include "sdcn/errors.hpp"

namespace sdcn {

DenseMatrix soft_assignment(const DenseMatrix& embedding, const ClusterCenters& c) {
    if (embedding.cols() != c.centers.cols())
        throw DimensionError("soft_assignment: embedding width " +
                             std::to_string(embedding.cols()) + " vs center width " +
                             std::to_string(c.centers.cols()));
    if (!(c.dof > 0.0)) throw ParameterError("soft_assignment: dof must be positive");
    const std::size_t n = embedding.rows(), k = c.centers.rows();
    const double expo = -(c.dof + 1.0) / 2.0;
    DenseMatrix q(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            double d = 0.0;
            for (std::size_t col = 0; col < embedding.cols(); ++col) {
                const double diff = embedding(i, col) - c.centers(j, col);
                d += diff * diff;
            }
            q(i, j) = std::pow(1.0 + d / c.dof, expo);
            sum += q(i, j);
        }
        for (std::size_t j = 0; j < k; ++j) q(i, j) /= sum;
    }
    return q;
}

DenseMatrix target_distribution(const DenseMatrix& q) {
    const std::size_t n = q.rows(), k = q.cols();
    std::vector<double> freq(k, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) freq[j] += q(i, j);
    for (std::size_t j = 0; j < k; ++j)
        if (!(freq[j] > 0.0))
            throw DegenerateClusterError("target_distribution: cluster " + std::to_string(j) +
                                         " has zero soft frequency");
    DenseMatrix p(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            p(i, j) = q(i, j) * q(i, j) / freq[j];
            sum += p(i, j);
        }
        for (std::size_t j = 0; j < k; ++j) p(i, j) /= sum;
    }
    return p;
}

double kl_divergence(const DenseMatrix& p, const DenseMatrix& q) {
    if (!p.same_shape(q)) throw DimensionError("kl_divergence: shape mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pv = p.data()[i];
        if (pv <= 0.0) continue;
        const double qv = q.data()[i];
        if (qv <= 0.0)
            throw NumericError("kl_divergence: infinite divergence (q=0 under positive p)");
        total += pv * std::log(pv / qv);
    }
    return total > 0.0 ? total : 0.0;
}

double total_loss(double l_res, double l_clu, double l_gcn, double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw ParameterError("total_loss: alpha and beta must be positive");
    return l_res + alpha * l_clu + beta * l_gcn;
}

std::vector<int> hard_labels(const DenseMatrix& assignment) {
    std::vector<int> labels(assignment.rows());
    for (std::size_t i = 0; i < assignment.rows(); ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < assignment.cols(); ++j)
            if (assignment(i, j) > assignment(i, best)) best = j;
        labels[i] = static_cast<int>(best);
    }
    return labels;
}

double row_entropy(const DenseMatrix& m, std::size_t row) {
    double h = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const double v = m(row, j);
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

}  // namespace sdcn
