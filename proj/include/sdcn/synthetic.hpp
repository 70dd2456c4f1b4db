#pragma once

#include <cstdint>

#include "sdcn/dataset.hpp"

namespace sdcn {

struct BlobsSpec {
    std::size_t clusters = 3;
    std::size_t per_cluster = 100;
    std::size_t dim = 16;
    double sigma = 0.1;
    double separation = 10.0;  // distance scale between cluster means
};

// Isotropic Gaussian blobs around well-separated random means.
DatasetBundle make_blobs(const BlobsSpec& spec, std::uint64_t seed);

struct SbmSpec {
    std::size_t blocks = 3;
    std::size_t per_block = 50;
    double p_in = 0.2;
    double p_out = 0.02;
    std::size_t feature_dim = 16;
    double feature_noise = 1.0;       // noise sigma around unit block means
    bool ensure_connected = true;     // chain consecutive nodes per block and
                                      // bridge blocks when sampling leaves
                                      // the graph disconnected
};

// Stochastic block model graph with block-correlated noisy features.
DatasetBundle make_sbm(const SbmSpec& spec, std::uint64_t seed);

struct TwoMoonsSpec {
    std::size_t per_moon = 100;
    double noise = 0.05;
    std::size_t knn_k = 5;  // edges of the bundled graph
};

// Two interleaving half circles plus a nearest-neighbor graph.
DatasetBundle make_two_moons_graph(const TwoMoonsSpec& spec, std::uint64_t seed);

}  // namespace sdcn
