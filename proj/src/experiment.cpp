#include "sdcn/experiment.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "sdcn/errors.hpp"
#include "sdcn/knn.hpp"
#include "sdcn/synthetic.hpp"

namespace sdcn {

namespace {

using nlohmann::json;

std::vector<std::size_t> parse_dims(const std::string& text) {
    std::vector<std::size_t> dims;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            dims.push_back(static_cast<std::size_t>(std::stoull(cell)));
        } catch (const std::exception&) {
            throw ConfigError("config: bad ae_dims entry '" + cell + "'");
        }
    }
    if (dims.empty()) throw ConfigError("config: ae_dims is empty");
    return dims;
}

std::size_t count_distinct(const Partition& labels) {
    return std::set<int>(labels.begin(), labels.end()).size();
}

json metrics_json(const MetricSet& m) {
    return json{{"acc", m.acc}, {"nmi", m.nmi}, {"ari", m.ari}, {"f1", m.f1}};
}

json record_json(const EpochRecord& r) {
    json j{{"epoch", r.epoch},
           {"loss_res", r.loss_res},
           {"loss_clu", r.loss_clu},
           {"loss_gcn", r.loss_gcn},
           {"loss_total", r.loss_total}};
    if (r.metrics_p) j["p"] = metrics_json(*r.metrics_p);
    if (r.metrics_q) j["q"] = metrics_json(*r.metrics_q);
    if (r.metrics_z) j["z"] = metrics_json(*r.metrics_z);
    return j;
}

}  // namespace

SparseGraph resolve_graph(const DatasetBundle& bundle, const Config& cfg) {
    const std::string source = cfg.get("graph_source");
    if (source == "file") {
        if (!bundle.graph)
            throw ConfigError("graph_source=file but the dataset has no graph.txt");
        return *bundle.graph;
    }
    if (source != "knn") throw ConfigError("config: graph_source must be knn or file");

    std::string similarity = cfg.get("similarity");
    if (similarity == "auto")
        similarity = features_look_binary(bundle.features) ? "dot" : "heat";
    DenseMatrix sim;
    if (similarity == "dot") {
        sim = dot_product_similarity(bundle.features);
    } else if (similarity == "heat") {
        const double t = cfg.get("heat_t") == "auto"
                             ? mean_squared_pairwise_distance(bundle.features)
                             : cfg.get_double("heat_t");
        sim = heat_kernel_similarity(bundle.features, t);
    } else {
        throw ConfigError("config: similarity must be auto, heat or dot");
    }
    return build_knn_graph(sim, static_cast<std::size_t>(cfg.get_int("knn_k")));
}

TrainConfig resolve_train_config(const Config& cfg, const DatasetBundle& bundle) {
    TrainConfig tc;
    tc.graph_source = cfg.get("graph_source") == "file" ? GraphSource::file : GraphSource::knn;
    tc.epochs = cfg.get("epochs") == "auto"
                    ? (tc.graph_source == GraphSource::file ? 50 : 200)
                    : static_cast<std::size_t>(cfg.get_int("epochs"));
    tc.lr = cfg.get("lr") == "auto" ? 1e-3 : cfg.get_double("lr");
    tc.alpha = cfg.get_double("alpha");
    tc.beta = cfg.get_double("beta");
    tc.epsilon = cfg.get_double("epsilon");
    tc.seed = cfg.get_seed();
    tc.variant = parse_variant(cfg.get("variant"));
    tc.kmeans_restarts = static_cast<std::size_t>(cfg.get_int("kmeans_restarts"));
    tc.gcn_depth = static_cast<std::size_t>(cfg.get_int("gcn_depth"));
    if (cfg.get("clusters") == "auto") {
        if (!bundle.labels)
            throw ConfigError("config: clusters=auto needs a labeled dataset");
        tc.clusters = count_distinct(*bundle.labels);
    } else {
        tc.clusters = static_cast<std::size_t>(cfg.get_int("clusters"));
    }
    return tc;
}

AutoencoderParams pretrain_or_load(const DenseMatrix& features, const Config& cfg,
                                   const std::filesystem::path& cache) {
    if (!cache.empty() && std::filesystem::exists(cache)) {
        AutoencoderParams p = load_autoencoder(cache);
        if (p.layer_dims.front() != features.cols())
            throw FormatError("pretrain cache " + cache.string() +
                              " was built for a different feature width");
        return p;
    }
    std::vector<std::size_t> dims{features.cols()};
    for (std::size_t d : parse_dims(cfg.get("ae_dims"))) dims.push_back(d);
    AutoencoderParams p = make_autoencoder(dims, cfg.get_seed());
    PretrainConfig pc;
    pc.epochs = static_cast<std::size_t>(cfg.get_int("pretrain_epochs"));
    pc.batch_size = static_cast<std::size_t>(cfg.get_int("batch_size"));
    pc.lr = cfg.get_double("pretrain_lr");
    pc.seed = cfg.get_seed();
    pretrain(features, p, pc);
    if (!cache.empty()) {
        std::filesystem::create_directories(cache.parent_path());
        save_autoencoder(cache, p);
    }
    return p;
}

ExperimentResult run_experiment(const Config& cfg) {
    if (!cfg.has("dataset")) throw ConfigError("config: dataset directory is required");
    const DatasetBundle bundle = load_dataset(cfg.get("dataset"));
    const SparseGraph graph = resolve_graph(bundle, cfg);
    TrainConfig tc = resolve_train_config(cfg, bundle);

    const std::filesystem::path out_dir = cfg.get("out");
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path cache = cfg.has("pretrain_cache")
                                            ? std::filesystem::path(cfg.get("pretrain_cache"))
                                            : out_dir / "ae_pretrain.bin";
    const AutoencoderParams pretrained = pretrain_or_load(bundle.features, cfg, cache);

    std::ofstream epochs_out(out_dir / "epochs.jsonl");
    if (!epochs_out) throw FormatError("cannot open " + (out_dir / "epochs.jsonl").string());
    tc.on_epoch = [&epochs_out](const EpochRecord& r) {
        epochs_out << record_json(r).dump() << '\n';
    };

    const Partition* truth = bundle.labels ? &*bundle.labels : nullptr;
    ExperimentResult result{train_sdcn(bundle.features, graph, pretrained, tc, truth), {}, false};
    epochs_out.close();

    save_labels(out_dir / "labels.txt", result.train.labels);
    save_model(out_dir / "params.bin", result.train.model);

    json summary{{"dataset", bundle.name},
                 {"samples", bundle.features.rows()},
                 {"features", bundle.features.cols()},
                 {"clusters", tc.clusters},
                 {"epochs", tc.epochs},
                 {"seed", tc.seed},
                 {"variant", variant_name(tc.variant)},
                 {"labels_from", tc.variant == Variant::q_output ? "q" : "z"}};
    const EpochRecord& last = result.train.records.back();
    summary["final_losses"] = {{"res", last.loss_res},
                               {"clu", last.loss_clu},
                               {"gcn", last.loss_gcn},
                               {"total", last.loss_total}};
    if (truth != nullptr) {
        result.final_metrics = evaluate_partition(result.train.labels, *truth);
        result.has_metrics = true;
        summary["final_metrics"] = metrics_json(result.final_metrics);
    }
    std::ofstream summary_out(out_dir / "summary.json");
    summary_out << summary.dump(2) << '\n';
    return result;
}

DenseMatrix run_sweep(const std::string& kind, const Config& cfg) {
    if (!cfg.has("dataset")) throw ConfigError("config: dataset directory is required");
    const DatasetBundle bundle = load_dataset(cfg.get("dataset"));
    if (!bundle.labels) throw ConfigError("sweep: dataset must carry ground-truth labels");
    const TrainConfig base = resolve_train_config(cfg, bundle);

    const std::filesystem::path out_dir = cfg.get("out");
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path cache = cfg.has("pretrain_cache")
                                            ? std::filesystem::path(cfg.get("pretrain_cache"))
                                            : out_dir / "ae_pretrain.bin";
    const AutoencoderParams pretrained = pretrain_or_load(bundle.features, cfg, cache);

    std::vector<double> settings;
    if (kind == "epsilon") {
        settings = {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    } else if (kind == "knn_k") {
        settings = {1, 3, 5, 10};
    } else if (kind == "depth") {
        settings = {1, 2, 3, 4};
    } else {
        throw ParameterError("sweep: kind must be epsilon, knn_k or depth");
    }

    DenseMatrix table(settings.size(), 5);
    for (std::size_t row = 0; row < settings.size(); ++row) {
        TrainConfig tc = base;
        Config point = cfg;
        if (kind == "epsilon") {
            tc.epsilon = settings[row];
        } else if (kind == "knn_k") {
            point.set("knn_k", std::to_string(static_cast<int>(settings[row])));
            point.set("graph_source", "knn");
            tc.graph_source = GraphSource::knn;
        } else {
            tc.gcn_depth = static_cast<std::size_t>(settings[row]);
        }
        const SparseGraph graph = resolve_graph(bundle, point);
        const TrainResult run = train_sdcn(bundle.features, graph, pretrained, tc,
                                           &*bundle.labels);
        const MetricSet m = evaluate_partition(run.labels, *bundle.labels);
        table(row, 0) = settings[row];
        table(row, 1) = m.acc;
        table(row, 2) = m.nmi;
        table(row, 3) = m.ari;
        table(row, 4) = m.f1;
    }

    std::ofstream out(out_dir / ("sweep_" + kind + ".csv"));
    out << "# " << kind << ",acc,nmi,ari,f1\n";
    out.precision(17);
    for (std::size_t i = 0; i < table.rows(); ++i) {
        for (std::size_t j = 0; j < table.cols(); ++j) {
            if (j) out << ',';
            out << table(i, j);
        }
        out << '\n';
    }
    return table;
}

DatasetBundle make_synthetic(const Config& cfg) {
    const std::string kind = cfg.get("synth_kind");
    const std::uint64_t seed = cfg.get_seed();
    if (kind == "blobs") {
        BlobsSpec spec;
        spec.clusters = static_cast<std::size_t>(cfg.get_int("synth_clusters"));
        spec.per_cluster = static_cast<std::size_t>(cfg.get_int("synth_per_cluster"));
        spec.dim = static_cast<std::size_t>(cfg.get_int("synth_dim"));
        spec.sigma = cfg.get_double("synth_sigma");
        spec.separation = cfg.get_double("synth_separation");
        return make_blobs(spec, seed);
    }
    if (kind == "sbm") {
        SbmSpec spec;
        spec.blocks = static_cast<std::size_t>(cfg.get_int("synth_clusters"));
        spec.per_block = static_cast<std::size_t>(cfg.get_int("synth_per_cluster"));
        spec.p_in = cfg.get_double("synth_p_in");
        spec.p_out = cfg.get_double("synth_p_out");
        spec.feature_dim = static_cast<std::size_t>(cfg.get_int("synth_dim"));
        spec.feature_noise = cfg.get_double("synth_sigma");
        return make_sbm(spec, seed);
    }
    if (kind == "two-moons-graph") {
        TwoMoonsSpec spec;
        spec.per_moon = static_cast<std::size_t>(cfg.get_int("synth_per_cluster"));
        spec.noise = cfg.get_double("synth_sigma");
        spec.knn_k = static_cast<std::size_t>(cfg.get_int("knn_k"));
        return make_two_moons_graph(spec, seed);
    }
    throw ParameterError("synth: kind must be blobs, sbm or two-moons-graph");
}

}  // namespace sdcn
