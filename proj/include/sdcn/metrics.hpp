#pragma once

#include <vector>

#include "sdcn/kmeans.hpp"

namespace sdcn {

struct MetricSet {
    double acc = 0.0;
    double nmi = 0.0;
    double ari = 0.0;
    double f1 = 0.0;
};

// Counts n[pred][truth]; table is square over max(label)+1 of both sides.
std::vector<std::vector<long long>> contingency_table(const Partition& pred,
                                                      const Partition& truth);

// Kuhn-Munkres assignment maximizing the table sum; returns column per row.
std::vector<int> hungarian_max(const std::vector<std::vector<long long>>& table);

// Permutation of predicted ids maximizing the matched count: perm[pred] = truth id.
std::vector<int> best_mapping(const Partition& pred, const Partition& truth);

// Accuracy after best_mapping.
double accuracy(const Partition& pred, const Partition& truth);

// Mutual information over the arithmetic mean of the entropies; defined as 0
// when either partition is a single cluster.
double nmi(const Partition& pred, const Partition& truth);

// Pair-counting adjusted Rand index; perfect pair agreement gives 1 even for
// trivial partitions, other zero-denominator cases give 0.
double ari(const Partition& pred, const Partition& truth);

// Macro F1 over the union of truth and mapped predicted labels.
double macro_f1(const Partition& pred, const Partition& truth);

MetricSet evaluate_partition(const Partition& pred, const Partition& truth);

}  // namespace sdcn
