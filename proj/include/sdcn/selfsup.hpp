#pragma once

#include <vector>

#include "sdcn/matrix.hpp"

namespace sdcn {

// Cluster centers in embedding space plus the Student-t degrees of freedom.
struct ClusterCenters {
    DenseMatrix centers;  // K x embedding width
    double dof = 1.0;
};

// Student-t soft assignment of each embedding row to each center; rows sum
// to 1.
DenseMatrix soft_assignment(const DenseMatrix& embedding, const ClusterCenters& c);

// Sharpened, frequency-normalized target built from the soft assignment.
// A zero soft cluster frequency raises DegenerateClusterError.
DenseMatrix target_distribution(const DenseMatrix& q);

// Sum over rows of p_ij log(p_ij / q_ij) with 0 log 0 = 0. A zero q entry
// under positive p raises NumericError.
double kl_divergence(const DenseMatrix& p, const DenseMatrix& q);

// l_res + alpha * l_clu + beta * l_gcn; alpha and beta must be positive.
double total_loss(double l_res, double l_clu, double l_gcn, double alpha, double beta);

// Row argmax; ties break toward the lowest index.
std::vector<int> hard_labels(const DenseMatrix& assignment);

// Shannon entropy (nats) of one stochastic row; used by sharpening checks.
double row_entropy(const DenseMatrix& m, std::size_t row);

struct AssignmentTriple {
    DenseMatrix q;  // soft assignment from the embedding
    DenseMatrix p;  // self-supervision target
    DenseMatrix z;  // graph-side predictive distribution
};

}  // namespace sdcn
