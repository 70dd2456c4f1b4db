#include "sdcn/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdcn/adam.hpp"
#include "sdcn/errors.hpp"
#include "sdcn/rng.hpp"
#include "sdcn/tensor_io.hpp"

namespace sdcn {

namespace {

constexpr char kMagic[9] = "SDCNAE1\0";

DenseMatrix glorot_uniform(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    DenseMatrix w(fan_in, fan_out);
    for (std::size_t i = 0; i < w.size(); ++i) w.data()[i] = uniform_real(rng, -limit, limit);
    return w;
}

DenseMatrix take_rows(const DenseMatrix& x, const std::vector<std::size_t>& rows) {
    DenseMatrix out(rows.size(), x.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy_n(x.row(rows[i]), x.cols(), out.row(i));
    return out;
}

}  // namespace

std::vector<DenseMatrix*> AutoencoderParams::tensors() {
    std::vector<DenseMatrix*> out;
    for (std::size_t l = 0; l < enc_weights.size(); ++l) {
        out.push_back(&enc_weights[l]);
        out.push_back(&enc_biases[l]);
    }
    for (std::size_t l = 0; l < dec_weights.size(); ++l) {
        out.push_back(&dec_weights[l]);
        out.push_back(&dec_biases[l]);
    }
    return out;
}

std::vector<const DenseMatrix*> AutoencoderParams::tensors() const {
    std::vector<const DenseMatrix*> out;
    for (std::size_t l = 0; l < enc_weights.size(); ++l) {
        out.push_back(&enc_weights[l]);
        out.push_back(&enc_biases[l]);
    }
    for (std::size_t l = 0; l < dec_weights.size(); ++l) {
        out.push_back(&dec_weights[l]);
        out.push_back(&dec_biases[l]);
    }
    return out;
}

AutoencoderParams make_autoencoder(const std::vector<std::size_t>& layer_dims,
                                   std::uint64_t seed) {
    if (layer_dims.size() < 2)
        throw ParameterError("make_autoencoder: need at least input and bottleneck dims");
    AutoencoderParams p;
    p.layer_dims = layer_dims;
    Rng rng(mix_seed(seed, 0x0ae0));
    const std::size_t depth = layer_dims.size() - 1;
    for (std::size_t l = 0; l < depth; ++l) {
        p.enc_weights.push_back(glorot_uniform(layer_dims[l], layer_dims[l + 1], rng));
        p.enc_biases.emplace_back(1, layer_dims[l + 1]);
    }
    // Decoder mirrors the encoder dims back to the input width.
    for (std::size_t l = depth; l-- > 0;) {
        p.dec_weights.push_back(glorot_uniform(layer_dims[l + 1], layer_dims[l], rng));
        p.dec_biases.emplace_back(1, layer_dims[l]);
    }
    return p;
}

std::vector<DenseMatrix> encode(const DenseMatrix& x, const AutoencoderParams& p) {
    if (x.cols() != p.layer_dims.front())
        throw DimensionError("encode: input width " + std::to_string(x.cols()) + " vs " +
                             std::to_string(p.layer_dims.front()));
    std::vector<DenseMatrix> layers;
    layers.reserve(p.depth());
    const DenseMatrix* h = &x;
    for (std::size_t l = 0; l < p.depth(); ++l) {
        DenseMatrix a = add_row_bias(matmul(*h, p.enc_weights[l]), p.enc_biases[l]);
        layers.push_back(l + 1 < p.depth() ? relu(a) : std::move(a));
        h = &layers.back();
    }
    return layers;
}

DenseMatrix decode(const DenseMatrix& bottleneck, const AutoencoderParams& p) {
    if (bottleneck.cols() != p.bottleneck_width())
        throw DimensionError("decode: bottleneck width " + std::to_string(bottleneck.cols()) +
                             " vs " + std::to_string(p.bottleneck_width()));
    DenseMatrix h = bottleneck;
    for (std::size_t l = 0; l < p.dec_weights.size(); ++l) {
        DenseMatrix a = add_row_bias(matmul(h, p.dec_weights[l]), p.dec_biases[l]);
        h = l + 1 < p.dec_weights.size() ? relu(a) : std::move(a);
    }
    return h;
}

double reconstruction_loss(const DenseMatrix& x, const DenseMatrix& reconstruction) {
    if (!x.same_shape(reconstruction)) throw DimensionError("reconstruction_loss: shape mismatch");
    const DenseMatrix diff = axpby(1.0, x, -1.0, reconstruction);
    return frobenius_norm_sq(diff) / (2.0 * static_cast<double>(x.rows()));
}

std::vector<GradTape::Var> AutoencoderVars::all() const {
    std::vector<GradTape::Var> out;
    for (std::size_t l = 0; l < enc_w.size(); ++l) {
        out.push_back(enc_w[l]);
        out.push_back(enc_b[l]);
    }
    for (std::size_t l = 0; l < dec_w.size(); ++l) {
        out.push_back(dec_w[l]);
        out.push_back(dec_b[l]);
    }
    return out;
}

AutoencoderVars autoencoder_leaves(GradTape& tape, const AutoencoderParams& p) {
    AutoencoderVars vars;
    for (std::size_t l = 0; l < p.enc_weights.size(); ++l) {
        vars.enc_w.push_back(tape.leaf(p.enc_weights[l]));
        vars.enc_b.push_back(tape.leaf(p.enc_biases[l]));
    }
    for (std::size_t l = 0; l < p.dec_weights.size(); ++l) {
        vars.dec_w.push_back(tape.leaf(p.dec_weights[l]));
        vars.dec_b.push_back(tape.leaf(p.dec_biases[l]));
    }
    return vars;
}

std::vector<GradTape::Var> encode_on_tape(GradTape& tape, GradTape::Var x,
                                          const AutoencoderVars& vars) {
    std::vector<GradTape::Var> layers;
    GradTape::Var h = x;
    for (std::size_t l = 0; l < vars.enc_w.size(); ++l) {
        GradTape::Var a = tape.add_row_bias(tape.matmul(h, vars.enc_w[l]), vars.enc_b[l]);
        h = l + 1 < vars.enc_w.size() ? tape.relu(a) : a;
        layers.push_back(h);
    }
    return layers;
}

GradTape::Var decode_on_tape(GradTape& tape, GradTape::Var bottleneck,
                             const AutoencoderVars& vars) {
    GradTape::Var h = bottleneck;
    for (std::size_t l = 0; l < vars.dec_w.size(); ++l) {
        GradTape::Var a = tape.add_row_bias(tape.matmul(h, vars.dec_w[l]), vars.dec_b[l]);
        h = l + 1 < vars.dec_w.size() ? tape.relu(a) : a;
    }
    return h;
}

PretrainReport pretrain(const DenseMatrix& x, AutoencoderParams& p, const PretrainConfig& cfg) {
    if (cfg.epochs < 1) throw ParameterError("pretrain: epochs must be >= 1");
    if (cfg.batch_size < 1) throw ParameterError("pretrain: batch_size must be >= 1");

    const std::size_t n = x.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng(mix_seed(cfg.seed, 0x5bfe));
    Adam opt(cfg.lr);

    PretrainReport report;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < n; start += cfg.batch_size) {
            const std::size_t stop = std::min(n, start + cfg.batch_size);
            const std::vector<std::size_t> idx(order.begin() + start, order.begin() + stop);
            const DenseMatrix batch = take_rows(x, idx);

            GradTape tape;
            AutoencoderVars vars = autoencoder_leaves(tape, p);
            const GradTape::Var input = tape.leaf(batch);
            const auto layers = encode_on_tape(tape, input, vars);
            const GradTape::Var recon = decode_on_tape(tape, layers.back(), vars);
            const GradTape::Var loss = tape.mse_half_mean(&batch, recon);

            const double loss_value = tape.value(loss)(0, 0);
            if (!std::isfinite(loss_value))
                throw TrainingError("pretrain: non-finite loss at epoch " +
                                    std::to_string(epoch));
            tape.backward(loss);

            std::vector<DenseMatrix*> params = p.tensors();
            std::vector<const DenseMatrix*> grads;
            for (const GradTape::Var v : vars.all()) grads.push_back(&tape.grad(v));
            opt.step(params, grads);

            epoch_loss += loss_value;
            ++batches;
        }
        report.epoch_loss.push_back(epoch_loss / static_cast<double>(batches));
    }
    return report;
}

void save_autoencoder(const std::filesystem::path& path, const AutoencoderParams& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("save_autoencoder: cannot open " + path.string());
    write_magic(out, kMagic);
    write_u64(out, p.layer_dims.size());
    for (std::size_t d : p.layer_dims) write_u64(out, d);
    const auto tensors = p.tensors();
    write_u64(out, tensors.size());
    for (const DenseMatrix* t : tensors) write_tensor(out, *t);
}

AutoencoderParams load_autoencoder(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_autoencoder: cannot open " + path.string());
    expect_magic(in, kMagic, path.string());
    const std::uint64_t ndims = read_u64(in, "layer dim count");
    AutoencoderParams p;
    for (std::uint64_t i = 0; i < ndims; ++i)
        p.layer_dims.push_back(read_u64(in, "layer dim"));
    const std::uint64_t count = read_u64(in, "tensor count");
    const std::size_t depth = p.layer_dims.size() - 1;
    if (count != 4 * depth)
        throw FormatError(path.string() + ": tensor count does not match layer dims");
    for (std::size_t l = 0; l < depth; ++l) {
        p.enc_weights.push_back(read_tensor(in));
        p.enc_biases.push_back(read_tensor(in));
    }
    for (std::size_t l = 0; l < depth; ++l) {
        p.dec_weights.push_back(read_tensor(in));
        p.dec_biases.push_back(read_tensor(in));
    }
    return p;
}

}  // namespace sdcn
