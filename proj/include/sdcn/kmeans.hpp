#pragma once

#include <cstdint>
#include <vector>

#include "sdcn/matrix.hpp"

namespace sdcn {

using Partition = std::vector<int>;

struct KmeansResult {
    DenseMatrix centers;  // k x d
    Partition labels;
    double inertia = 0.0;
};

// Lloyd iterations with k-means++ seeding, run `restarts` times with
// sub-seeds derived from `seed`; the lowest-inertia run wins. Ties in
// nearest-center assignment break toward the lower center index; an emptied
// cluster is re-seeded to the point farthest from its assigned center.
KmeansResult kmeans(const DenseMatrix& x, std::size_t k, std::size_t restarts,
                    std::uint64_t seed);

}  // namespace sdcn
