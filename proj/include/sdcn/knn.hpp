#pragma once

#include "sdcn/graph.hpp"
#include "sdcn/matrix.hpp"

namespace sdcn {

// S_ij = exp(-||x_i - x_j||^2 / t); intended for continuous features.
DenseMatrix heat_kernel_similarity(const DenseMatrix& x, double t);

// S_ij = <x_i, x_j>; intended for binary / bag-of-words features.
DenseMatrix dot_product_similarity(const DenseMatrix& x);

// Default heat-kernel time parameter: mean squared pairwise distance.
double mean_squared_pairwise_distance(const DenseMatrix& x);

// True when every entry is 0 or 1 (bag-of-words style features).
bool features_look_binary(const DenseMatrix& x);

// Each node links to its k most similar distinct nodes; the edge set is the
// symmetric union. Ties break toward the lower node index.
SparseGraph build_knn_graph(const DenseMatrix& similarity, std::size_t k);

}  // namespace sdcn
