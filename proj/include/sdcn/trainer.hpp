#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "sdcn/autoencoder.hpp"
#include "sdcn/gcn.hpp"
#include "sdcn/graph.hpp"
#include "sdcn/metrics.hpp"
#include "sdcn/selfsup.hpp"

namespace sdcn {

enum class Variant { full, no_delivery, mlp, q_output };
enum class GraphSource { knn, file };

Variant parse_variant(const std::string& name);
std::string variant_name(Variant v);

struct TrainConfig {
    std::size_t epochs = 200;
    double lr = 1e-3;
    double alpha = 0.1;
    double beta = 0.01;
    double epsilon = 0.5;
    std::size_t clusters = 2;
    std::uint64_t seed = 0;
    Variant variant = Variant::full;
    GraphSource graph_source = GraphSource::knn;
    std::size_t kmeans_restarts = 20;
    std::size_t gcn_depth = 0;  // 0 = full encoder depth
    // Streamed per-epoch records (for JSON-lines output); may be empty.
    std::function<void(const struct EpochRecord&)> on_epoch;
};

struct EpochRecord {
    std::size_t epoch = 0;
    double loss_res = 0.0, loss_clu = 0.0, loss_gcn = 0.0, loss_total = 0.0;
    std::optional<MetricSet> metrics_p, metrics_q, metrics_z;
};

struct ModelParams {
    AutoencoderParams ae;
    GcnParams gcn;
    ClusterCenters centers;
};

struct TrainResult {
    ModelParams model;
    std::vector<EpochRecord> records;
    Partition labels;
    AssignmentTriple final_assignments;
};

// K-means centers over the bottleneck representation; dof fixed at 1.
ClusterCenters init_centers(const DenseMatrix& bottleneck, std::size_t k,
                            std::size_t restarts, std::uint64_t seed);

// Joint optimization of reconstruction, cluster-cohesion and graph losses
// with one full-batch optimizer step per epoch. `truth` enables per-epoch
// metrics. Non-finite loss raises TrainingError after recording the epoch.
TrainResult train_sdcn(const DenseMatrix& x, const SparseGraph& graph,
                       const AutoencoderParams& pretrained, const TrainConfig& cfg,
                       const Partition* truth = nullptr);

std::vector<EpochRecord> run_variant(Variant variant, const DenseMatrix& x,
                                     const SparseGraph& graph,
                                     const AutoencoderParams& pretrained, TrainConfig cfg,
                                     const Partition* truth = nullptr);

struct DepthSweepRow {
    std::size_t depth = 0;
    MetricSet metrics;
};

// Trains one model per depth, transferring only the last `depth` encoder
// layers into the graph module.
std::vector<DepthSweepRow> depth_sweep(const DenseMatrix& x, const SparseGraph& graph,
                                       const AutoencoderParams& pretrained, TrainConfig cfg,
                                       const std::vector<std::size_t>& depths,
                                       const Partition& truth);

void save_model(const std::filesystem::path& path, const ModelParams& model);
ModelParams load_model(const std::filesystem::path& path);

}  // namespace sdcn
