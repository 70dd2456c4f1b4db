#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdcn/dataset.hpp"
#include "sdcn/errors.hpp"
#include "sdcn/experiment.hpp"
#include "sdcn/probes.hpp"
#include "sdcn/rng.hpp"
#include "sdcn/synthetic.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string config_path;
    std::optional<long long> seed;
    std::optional<std::string> out;
    std::optional<std::string> variant;
    std::optional<std::string> dataset;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "key=value config file");
    cmd->add_option("--seed", flags.seed, "random seed");
    cmd->add_option("--out", flags.out, "output directory");
    cmd->add_option("--variant", flags.variant, "full | no-delivery | mlp | q-output");
    cmd->add_option("--dataset", flags.dataset, "dataset directory");
}

sdcn::Config resolve(const CommonFlags& flags) {
    sdcn::Config cfg = sdcn::Config::defaults();
    if (!flags.config_path.empty()) cfg.apply_file(flags.config_path);
    if (flags.seed) cfg.set("seed", std::to_string(*flags.seed));
    if (flags.out) cfg.set("out", *flags.out);
    if (flags.variant) cfg.set("variant", *flags.variant);
    if (flags.dataset) cfg.set("dataset", *flags.dataset);
    return cfg;
}

int run_pretrain(const sdcn::Config& cfg) {
    if (!cfg.has("dataset")) throw sdcn::ConfigError("config: dataset directory is required");
    const sdcn::DatasetBundle bundle = sdcn::load_dataset(cfg.get("dataset"));
    const std::filesystem::path out_dir = cfg.get("out");
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path cache =
        cfg.has("pretrain_cache") ? std::filesystem::path(cfg.get("pretrain_cache"))
                                  : out_dir / "ae_pretrain.bin";
    std::filesystem::remove(cache);  // the verb always retrains
    sdcn::pretrain_or_load(bundle.features, cfg, cache);
    std::cout << "pretrained autoencoder written to " << cache.string() << "\n";
    return 0;
}

int run_train(const sdcn::Config& cfg) {
    const sdcn::ExperimentResult result = sdcn::run_experiment(cfg);
    if (result.has_metrics) {
        std::cout << "final acc=" << result.final_metrics.acc
                  << " nmi=" << result.final_metrics.nmi
                  << " ari=" << result.final_metrics.ari
                  << " f1=" << result.final_metrics.f1 << "\n";
    } else {
        std::cout << "finished (no ground-truth labels; metrics skipped)\n";
    }
    std::cout << "outputs under " << cfg.get("out") << "\n";
    return 0;
}

int run_synth(const sdcn::Config& cfg) {
    const sdcn::DatasetBundle bundle = sdcn::make_synthetic(cfg);
    const std::filesystem::path out_dir = cfg.get("out");
    sdcn::save_dataset(out_dir, bundle);
    std::cout << bundle.name << ": " << bundle.features.rows() << " samples, "
              << bundle.features.cols() << " features"
              << (bundle.graph ? ", graph included" : "") << " -> " << out_dir.string() << "\n";
    return 0;
}

int run_sweep_cmd(const std::string& kind, const sdcn::Config& cfg) {
    const sdcn::DenseMatrix table = sdcn::run_sweep(kind, cfg);
    std::cout << kind << " sweep (" << table.rows() << " settings):\n";
    for (std::size_t i = 0; i < table.rows(); ++i) {
        std::cout << "  " << table(i, 0) << ": acc=" << table(i, 1) << " nmi=" << table(i, 2)
                  << " ari=" << table(i, 3) << " f1=" << table(i, 4) << "\n";
    }
    std::cout << "table written to sweep_" << kind << ".csv\n";
    return 0;
}

int run_probe(const sdcn::Config& cfg) {
    const std::uint64_t seed = cfg.get_seed();
    sdcn::Rng rng(sdcn::mix_seed(seed, 0xbe));

    auto random_graph = [&rng](std::size_t n, double p) {
        std::vector<sdcn::Edge> edges;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (sdcn::uniform_real(rng, 0.0, 1.0) < p) edges.push_back({i, j, 1.0});
        return sdcn::SparseGraph(n, std::move(edges));
    };
    auto random_matrix = [&rng](std::size_t r, std::size_t c) {
        sdcn::DenseMatrix m(r, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            m.data()[i] = sdcn::normal_real(rng, 0.0, 1.0);
        return m;
    };

    bool ok = true;
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 4 + sdcn::uniform_index(rng, 13);
            const sdcn::SparseGraph g = random_graph(n, 0.4);
            const sdcn::DenseMatrix x = random_matrix(n, 6);
            std::vector<sdcn::DenseMatrix> hidden;
            for (int l = 0; l < 4; ++l) hidden.push_back(random_matrix(n, 6));
            for (const double eps : {0.0, 0.25, 0.5, 1.0})
                for (std::size_t depth = 1; depth <= 4; ++depth)
                    worst = std::max(worst,
                                     sdcn::probe_unrolled_propagation(x, hidden, g, eps, depth)
                                         .max_abs_diff);
        }
        const bool pass = worst < 1e-9;
        ok = ok && pass;
        std::cout << (pass ? "PASS" : "FAIL")
                  << " propagation unrolling identity, max |lhs-rhs| = " << worst << "\n";
    }
    {
        std::size_t violations = 0;
        double min_slack = 1e300;
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 4 + sdcn::uniform_index(rng, 9);
            const sdcn::SparseGraph g = random_graph(n, 0.5);
            const sdcn::DenseMatrix h = random_matrix(n, 5);
            const std::size_t i = sdcn::uniform_index(rng, n);
            std::size_t j = sdcn::uniform_index(rng, n);
            if (j == i) j = (j + 1) % n;
            const sdcn::SecondOrderBound b = sdcn::probe_second_order_bound(h, g, i, j);
            min_slack = std::min(min_slack, b.bound - b.distance);
            if (b.distance > b.bound + 1e-9) ++violations;
        }
        const bool pass = violations == 0;
        ok = ok && pass;
        std::cout << (pass ? "PASS" : "FAIL")
                  << " one-step distance bound, min slack = " << min_slack << "\n";
    }
    return ok ? 0 : 1;
}

int run_eval(const std::string& pred_path, const std::string& truth_path) {
    const sdcn::Partition pred = sdcn::load_labels(pred_path);
    const sdcn::Partition truth = sdcn::load_labels(truth_path);
    const sdcn::MetricSet m = sdcn::evaluate_partition(pred, truth);
    std::cout << json{{"acc", m.acc}, {"nmi", m.nmi}, {"ari", m.ari}, {"f1", m.f1}}.dump(2)
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deep clustering over a coupled autoencoder / graph-convolution model"};
    app.require_subcommand(1);

    CommonFlags flags;
    CLI::App* pretrain_cmd = app.add_subcommand("pretrain", "train the autoencoder alone");
    add_common(pretrain_cmd, flags);
    CLI::App* train_cmd = app.add_subcommand("train", "run the full clustering pipeline");
    add_common(train_cmd, flags);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "metric table over a parameter sweep");
    std::string sweep_kind;
    sweep_cmd->add_option("kind", sweep_kind, "epsilon | knn_k | depth")->required();
    add_common(sweep_cmd, flags);
    CLI::App* probe_cmd = app.add_subcommand("probe", "randomized propagation-theory checks");
    add_common(probe_cmd, flags);
    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset");
    add_common(synth_cmd, flags);
    CLI::App* eval_cmd = app.add_subcommand("eval", "metrics from two label files");
    std::string pred_path, truth_path;
    eval_cmd->add_option("--pred", pred_path, "predicted labels file")->required();
    eval_cmd->add_option("--truth", truth_path, "ground-truth labels file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval_cmd->parsed()) return run_eval(pred_path, truth_path);
        const sdcn::Config cfg = resolve(flags);
        if (pretrain_cmd->parsed()) return run_pretrain(cfg);
        if (train_cmd->parsed()) return run_train(cfg);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_kind, cfg);
        if (probe_cmd->parsed()) return run_probe(cfg);
        if (synth_cmd->parsed()) return run_synth(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
