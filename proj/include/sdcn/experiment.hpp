#pragma once

#include <filesystem>

#include "sdcn/config.hpp"
#include "sdcn/dataset.hpp"
#include "sdcn/metrics.hpp"
#include "sdcn/trainer.hpp"

namespace sdcn {

// Graph per config: provided file graph, or the KNN construction with the
// configured similarity/k.
SparseGraph resolve_graph(const DatasetBundle& bundle, const Config& cfg);

// TrainConfig resolved from the flat config (profile rules for "auto" keys).
TrainConfig resolve_train_config(const Config& cfg, const DatasetBundle& bundle);

// Pretrained autoencoder: loaded from the cache file when present, otherwise
// trained on the bundle and saved there.
AutoencoderParams pretrain_or_load(const DenseMatrix& features, const Config& cfg,
                                   const std::filesystem::path& cache);

struct ExperimentResult {
    TrainResult train;
    MetricSet final_metrics;  // zeros when the dataset has no labels
    bool has_metrics = false;
};

// Full pipeline: load dataset, build graph, pretrain (or load cache), train,
// and write epochs.jsonl / summary.json / labels.txt / params.bin under the
// configured output directory.
ExperimentResult run_experiment(const Config& cfg);

// Writes one metrics row per swept setting to sweep_<kind>.csv under the
// output directory and returns the table (setting value in column 0, then
// ACC/NMI/ARI/F1). kind is "epsilon", "knn_k" or "depth".
DenseMatrix run_sweep(const std::string& kind, const Config& cfg);

// Dataset generation entry used by the synth verb.
DatasetBundle make_synthetic(const Config& cfg);

}  // namespace sdcn
