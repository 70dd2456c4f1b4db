#include "sdcn/trainer.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "sdcn/adam.hpp"
#include "sdcn/errors.hpp"
#include "sdcn/kmeans.hpp"
#include "sdcn/rng.hpp"
#include "sdcn/tensor_io.hpp"

namespace sdcn {

namespace {

constexpr char kModelMagic[9] = "SDCNMD1\0";

std::vector<std::size_t> gcn_widths(const AutoencoderParams& ae, std::size_t depth) {
    // Last `depth` encoder widths, preceded by the raw input width.
    std::vector<std::size_t> widths{ae.layer_dims.front()};
    for (std::size_t l = ae.depth() - depth; l < ae.depth(); ++l)
        widths.push_back(ae.layer_dims[l + 1]);
    return widths;
}

}  // namespace

Variant parse_variant(const std::string& name) {
    if (name == "full") return Variant::full;
    if (name == "no-delivery") return Variant::no_delivery;
    if (name == "mlp") return Variant::mlp;
    if (name == "q-output") return Variant::q_output;
    throw ParameterError("unknown variant: " + name);
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::full: return "full";
        case Variant::no_delivery: return "no-delivery";
        case Variant::mlp: return "mlp";
        case Variant::q_output: return "q-output";
    }
    throw ParameterError("unknown variant id");
}

ClusterCenters init_centers(const DenseMatrix& bottleneck, std::size_t k,
                            std::size_t restarts, std::uint64_t seed) {
    const KmeansResult km = kmeans(bottleneck, k, restarts, seed);
    return ClusterCenters{km.centers, 1.0};
}

TrainResult train_sdcn(const DenseMatrix& x, const SparseGraph& graph,
                       const AutoencoderParams& pretrained, const TrainConfig& cfg,
                       const Partition* truth) {
    if (cfg.epochs < 1) throw ParameterError("train_sdcn: epochs must be >= 1");
    if (!(cfg.alpha > 0.0) || !(cfg.beta > 0.0))
        throw ParameterError("train_sdcn: alpha and beta must be positive");
    if (graph.node_count() != x.rows())
        throw DimensionError("train_sdcn: graph node count vs sample count");
    if (cfg.clusters < 2) throw ParameterError("train_sdcn: need at least two clusters");

    const std::size_t depth =
        cfg.gcn_depth == 0 ? pretrained.depth() : std::min(cfg.gcn_depth, pretrained.depth());

    TrainResult result;
    result.model.ae = pretrained;
    result.model.gcn =
        make_gcn(gcn_widths(pretrained, depth), cfg.clusters, mix_seed(cfg.seed, 0x9c0));
    {
        const std::vector<DenseMatrix> layers = encode(x, pretrained);
        result.model.centers = init_centers(layers.back(), cfg.clusters, cfg.kmeans_restarts,
                                            mix_seed(cfg.seed, 0x11a));
    }

    const double epsilon = cfg.variant == Variant::no_delivery ? 0.0 : cfg.epsilon;
    const CsrMatrix* adjacency =
        cfg.variant == Variant::mlp ? nullptr : &graph.normalized();

    Adam opt(cfg.lr);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        GradTape tape;
        AutoencoderVars ae_vars = autoencoder_leaves(tape, result.model.ae);
        GcnVars gcn_vars = gcn_leaves(tape, result.model.gcn);
        const GradTape::Var centers_var = tape.leaf(result.model.centers.centers);
        const GradTape::Var input = tape.leaf(x);

        const std::vector<GradTape::Var> enc_layers = encode_on_tape(tape, input, ae_vars);
        const GradTape::Var bottleneck = enc_layers.back();

        const GradTape::Var q_var = tape.row_normalize(
            tape.student_t_kernel(bottleneck, centers_var, result.model.centers.dof));
        // The target supervises both heads; it never receives gradient.
        const DenseMatrix target = target_distribution(tape.value(q_var));

        const std::vector<GradTape::Var> delivered(enc_layers.end() - depth, enc_layers.end());
        const GcnForwardVars gcn_out =
            gcn_forward_on_tape(tape, input, delivered, adjacency, gcn_vars, epsilon);

        const GradTape::Var reconstruction = decode_on_tape(tape, bottleneck, ae_vars);

        const GradTape::Var loss_res = tape.mse_half_mean(&x, reconstruction);
        const GradTape::Var loss_clu = tape.kl_const_target(&target, q_var);
        const GradTape::Var loss_gcn = tape.kl_const_target(&target, gcn_out.assignment);
        const std::array<std::pair<double, GradTape::Var>, 3> terms{
            {{1.0, loss_res}, {cfg.alpha, loss_clu}, {cfg.beta, loss_gcn}}};
        const GradTape::Var loss = tape.weighted_sum(terms);

        EpochRecord record;
        record.epoch = epoch;
        record.loss_res = tape.value(loss_res)(0, 0);
        record.loss_clu = tape.value(loss_clu)(0, 0);
        record.loss_gcn = tape.value(loss_gcn)(0, 0);
        record.loss_total = tape.value(loss)(0, 0);
        if (truth != nullptr) {
            record.metrics_p = evaluate_partition(hard_labels(target), *truth);
            record.metrics_q = evaluate_partition(hard_labels(tape.value(q_var)), *truth);
            record.metrics_z =
                evaluate_partition(hard_labels(tape.value(gcn_out.assignment)), *truth);
        }
        result.records.push_back(record);
        if (cfg.on_epoch) cfg.on_epoch(record);
        if (!std::isfinite(record.loss_total))
            throw TrainingError("train_sdcn: non-finite loss at epoch " + std::to_string(epoch));

        result.final_assignments.q = tape.value(q_var);
        result.final_assignments.p = target;
        result.final_assignments.z = tape.value(gcn_out.assignment);

        tape.backward(loss);

        std::vector<DenseMatrix*> params = result.model.ae.tensors();
        std::vector<const DenseMatrix*> grads;
        for (const GradTape::Var v : ae_vars.all()) grads.push_back(&tape.grad(v));
        for (std::size_t l = 0; l < gcn_vars.weights.size(); ++l) {
            params.push_back(&result.model.gcn.weights[l]);
            grads.push_back(&tape.grad(gcn_vars.weights[l]));
        }
        params.push_back(&result.model.centers.centers);
        grads.push_back(&tape.grad(centers_var));
        opt.step(params, grads);
    }

    result.labels = cfg.variant == Variant::q_output
                        ? hard_labels(result.final_assignments.q)
                        : hard_labels(result.final_assignments.z);
    return result;
}

std::vector<EpochRecord> run_variant(Variant variant, const DenseMatrix& x,
                                     const SparseGraph& graph,
                                     const AutoencoderParams& pretrained, TrainConfig cfg,
                                     const Partition* truth) {
    cfg.variant = variant;
    return train_sdcn(x, graph, pretrained, cfg, truth).records;
}

std::vector<DepthSweepRow> depth_sweep(const DenseMatrix& x, const SparseGraph& graph,
                                       const AutoencoderParams& pretrained, TrainConfig cfg,
                                       const std::vector<std::size_t>& depths,
                                       const Partition& truth) {
    std::vector<DepthSweepRow> rows;
    for (std::size_t depth : depths) {
        if (depth < 1 || depth > pretrained.depth())
            throw ParameterError("depth_sweep: depth " + std::to_string(depth) +
                                 " outside 1.." + std::to_string(pretrained.depth()));
        cfg.gcn_depth = depth;
        const TrainResult run = train_sdcn(x, graph, pretrained, cfg, &truth);
        rows.push_back({depth, evaluate_partition(run.labels, truth)});
    }
    return rows;
}

void save_model(const std::filesystem::path& path, const ModelParams& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("save_model: cannot open " + path.string());
    write_magic(out, kModelMagic);
    write_u64(out, model.ae.layer_dims.size());
    for (std::size_t d : model.ae.layer_dims) write_u64(out, d);
    std::vector<const DenseMatrix*> tensors = model.ae.tensors();
    for (const DenseMatrix* w : model.gcn.tensors()) tensors.push_back(w);
    tensors.push_back(&model.centers.centers);
    write_u64(out, model.gcn.weights.size());
    write_u64(out, tensors.size());
    for (const DenseMatrix* t : tensors) write_tensor(out, *t);
}

ModelParams load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_model: cannot open " + path.string());
    expect_magic(in, kModelMagic, path.string());
    ModelParams model;
    const std::uint64_t ndims = read_u64(in, "layer dim count");
    for (std::uint64_t i = 0; i < ndims; ++i)
        model.ae.layer_dims.push_back(read_u64(in, "layer dim"));
    const std::uint64_t gcn_count = read_u64(in, "gcn weight count");
    const std::uint64_t total = read_u64(in, "tensor count");
    const std::size_t depth = model.ae.layer_dims.size() - 1;
    if (total != 4 * depth + gcn_count + 1)
        throw FormatError(path.string() + ": tensor count mismatch");
    for (std::size_t l = 0; l < depth; ++l) {
        model.ae.enc_weights.push_back(read_tensor(in));
        model.ae.enc_biases.push_back(read_tensor(in));
    }
    for (std::size_t l = 0; l < depth; ++l) {
        model.ae.dec_weights.push_back(read_tensor(in));
        model.ae.dec_biases.push_back(read_tensor(in));
    }
    for (std::uint64_t l = 0; l < gcn_count; ++l)
        model.gcn.weights.push_back(read_tensor(in));
    model.centers.centers = read_tensor(in);
    model.centers.dof = 1.0;
    return model;
}

}  // namespace sdcn
