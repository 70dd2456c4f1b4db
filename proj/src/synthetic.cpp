#include "sdcn/synthetic.hpp"

#include <cmath>
#include <numbers>

#include "sdcn/errors.hpp"
#include "sdcn/knn.hpp"
#include "sdcn/rng.hpp"

namespace sdcn {

DatasetBundle make_blobs(const BlobsSpec& spec, std::uint64_t seed) {
    if (spec.clusters < 1 || spec.per_cluster < 1 || spec.dim < 1)
        throw ParameterError("make_blobs: counts must be positive");
    Rng rng(mix_seed(seed, 0xb10b));
    const std::size_t n = spec.clusters * spec.per_cluster;

    DenseMatrix means(spec.clusters, spec.dim);
    for (std::size_t c = 0; c < spec.clusters; ++c)
        for (std::size_t j = 0; j < spec.dim; ++j)
            means(c, j) = spec.separation * normal_real(rng, 0.0, 1.0) /
                          std::sqrt(static_cast<double>(spec.dim));

    DatasetBundle bundle;
    bundle.name = "blobs";
    bundle.features = DenseMatrix(n, spec.dim);
    bundle.labels = Partition(n);
    std::size_t row = 0;
    for (std::size_t c = 0; c < spec.clusters; ++c) {
        for (std::size_t s = 0; s < spec.per_cluster; ++s, ++row) {
            (*bundle.labels)[row] = static_cast<int>(c);
            for (std::size_t j = 0; j < spec.dim; ++j)
                bundle.features(row, j) = means(c, j) + normal_real(rng, 0.0, spec.sigma);
        }
    }
    return bundle;
}

DatasetBundle make_sbm(const SbmSpec& spec, std::uint64_t seed) {
    if (spec.blocks < 1 || spec.per_block < 1)
        throw ParameterError("make_sbm: counts must be positive");
    Rng rng(mix_seed(seed, 0x5b4));
    const std::size_t n = spec.blocks * spec.per_block;

    DatasetBundle bundle;
    bundle.name = "sbm";
    bundle.labels = Partition(n);
    for (std::size_t i = 0; i < n; ++i)
        (*bundle.labels)[i] = static_cast<int>(i / spec.per_block);

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same = (*bundle.labels)[i] == (*bundle.labels)[j];
            const double p = same ? spec.p_in : spec.p_out;
            if (uniform_real(rng, 0.0, 1.0) < p) edges.push_back({i, j, 1.0});
        }
    }
    if (spec.ensure_connected) {
        for (std::size_t b = 0; b < spec.blocks; ++b) {
            const std::size_t base = b * spec.per_block;
            for (std::size_t s = 1; s < spec.per_block; ++s)
                edges.push_back({base + s - 1, base + s, 1.0});
            if (b + 1 < spec.blocks)
                edges.push_back({base + spec.per_block - 1, base + spec.per_block, 1.0});
        }
    }
    bundle.graph = SparseGraph(n, std::move(edges));

    // Unit-vector block means drowned in feature noise; the graph carries the
    // cleaner signal.
    bundle.features = DenseMatrix(n, spec.feature_dim);
    DenseMatrix means(spec.blocks, spec.feature_dim);
    for (std::size_t b = 0; b < spec.blocks; ++b)
        means(b, b % spec.feature_dim) = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t b = static_cast<std::size_t>((*bundle.labels)[i]);
        for (std::size_t j = 0; j < spec.feature_dim; ++j)
            bundle.features(i, j) = means(b, j) + normal_real(rng, 0.0, spec.feature_noise);
    }
    return bundle;
}

DatasetBundle make_two_moons_graph(const TwoMoonsSpec& spec, std::uint64_t seed) {
    if (spec.per_moon < 2) throw ParameterError("make_two_moons_graph: per_moon must be >= 2");
    Rng rng(mix_seed(seed, 0x300));
    const std::size_t n = 2 * spec.per_moon;

    DatasetBundle bundle;
    bundle.name = "two-moons-graph";
    bundle.features = DenseMatrix(n, 2);
    bundle.labels = Partition(n);
    for (std::size_t i = 0; i < spec.per_moon; ++i) {
        const double t = std::numbers::pi * static_cast<double>(i) /
                         static_cast<double>(spec.per_moon - 1);
        bundle.features(i, 0) = std::cos(t) + normal_real(rng, 0.0, spec.noise);
        bundle.features(i, 1) = std::sin(t) + normal_real(rng, 0.0, spec.noise);
        (*bundle.labels)[i] = 0;
        const std::size_t j = spec.per_moon + i;
        bundle.features(j, 0) = 1.0 - std::cos(t) + normal_real(rng, 0.0, spec.noise);
        bundle.features(j, 1) = 0.5 - std::sin(t) + normal_real(rng, 0.0, spec.noise);
        (*bundle.labels)[j] = 1;
    }
    const DenseMatrix sim =
        heat_kernel_similarity(bundle.features, mean_squared_pairwise_distance(bundle.features));
    bundle.graph = build_knn_graph(sim, spec.knn_k);
    return bundle;
}

}  // namespace sdcn
