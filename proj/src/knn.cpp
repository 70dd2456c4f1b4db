#include "sdcn/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "sdcn/errors.hpp"

namespace sdcn {

namespace {

double squared_distance(const DenseMatrix& x, std::size_t i, std::size_t j) {
    const double* a = x.row(i);
    const double* b = x.row(j);
    double d = 0.0;
    for (std::size_t k = 0; k < x.cols(); ++k) {
        const double diff = a[k] - b[k];
        d += diff * diff;
    }
    return d;
}

}  // namespace

DenseMatrix heat_kernel_similarity(const DenseMatrix& x, double t) {
    if (!(t > 0.0)) throw ParameterError("heat_kernel_similarity: t must be positive");
    const std::size_t n = x.rows();
    DenseMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = std::exp(-squared_distance(x, i, j) / t);
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

DenseMatrix dot_product_similarity(const DenseMatrix& x) {
    DenseMatrix s = matmul_nt(x, x);
    // Enforce exact symmetry regardless of kernel evaluation order.
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = i + 1; j < s.cols(); ++j) s(j, i) = s(i, j);
    return s;
}

double mean_squared_pairwise_distance(const DenseMatrix& x) {
    const std::size_t n = x.rows();
    if (n < 2) return 1.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) total += squared_distance(x, i, j);
    return total / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

bool features_look_binary(const DenseMatrix& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = x.data()[i];
        if (v != 0.0 && v != 1.0) return false;
    }
    return true;
}

SparseGraph build_knn_graph(const DenseMatrix& similarity, std::size_t k) {
    const std::size_t n = similarity.rows();
    if (similarity.cols() != n) throw DimensionError("build_knn_graph: similarity must be square");
    if (k < 1 || k >= n)
        throw ParameterError("build_knn_graph: k must satisfy 1 <= k < " + std::to_string(n));

    std::set<std::pair<std::size_t, std::size_t>> picked;
    std::vector<std::size_t> order(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t m = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) order[m++] = j;
        // Most similar first; equal similarities resolve to the lower index.
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (similarity(i, a) != similarity(i, b)) return similarity(i, a) > similarity(i, b);
            return a < b;
        });
        for (std::size_t r = 0; r < k; ++r) {
            const std::size_t j = order[r];
            picked.insert({std::min(i, j), std::max(i, j)});
        }
    }

    std::vector<Edge> edges;
    edges.reserve(picked.size());
    for (const auto& [u, v] : picked) edges.push_back({u, v, 1.0});
    return SparseGraph(n, std::move(edges));
}

}  // namespace sdcn
