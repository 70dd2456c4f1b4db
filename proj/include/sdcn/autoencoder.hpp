#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sdcn/matrix.hpp"
#include "sdcn/tape.hpp"

namespace sdcn {

// Stacked fully connected encoder/decoder. layer_dims holds
// [input, hidden..., bottleneck]; the decoder mirrors the encoder. Hidden
// layers use relu, the bottleneck and the reconstruction output are linear.
struct AutoencoderParams {
    std::vector<std::size_t> layer_dims;
    std::vector<DenseMatrix> enc_weights, enc_biases;
    std::vector<DenseMatrix> dec_weights, dec_biases;

    std::size_t depth() const { return layer_dims.empty() ? 0 : layer_dims.size() - 1; }
    std::size_t bottleneck_width() const { return layer_dims.back(); }

    // Fixed tensor order shared by the optimizer and the binary format.
    std::vector<DenseMatrix*> tensors();
    std::vector<const DenseMatrix*> tensors() const;
};

// Glorot-uniform weights, zero biases.
AutoencoderParams make_autoencoder(const std::vector<std::size_t>& layer_dims,
                                   std::uint64_t seed);

// All encoder layer outputs, one per layer (the last is the bottleneck).
std::vector<DenseMatrix> encode(const DenseMatrix& x, const AutoencoderParams& p);

// Reconstruction from a bottleneck representation.
DenseMatrix decode(const DenseMatrix& bottleneck, const AutoencoderParams& p);

// (1 / 2N) * ||x - reconstruction||_F^2.
double reconstruction_loss(const DenseMatrix& x, const DenseMatrix& reconstruction);

struct PretrainConfig {
    std::size_t epochs = 30;
    std::size_t batch_size = 256;
    double lr = 1e-3;
    std::uint64_t seed = 0;
};

struct PretrainReport {
    std::vector<double> epoch_loss;  // mean batch loss per epoch
};

// Mini-batch adaptive gradient descent on the reconstruction loss.
// Non-finite loss raises TrainingError.
PretrainReport pretrain(const DenseMatrix& x, AutoencoderParams& p, const PretrainConfig& cfg);

void save_autoencoder(const std::filesystem::path& path, const AutoencoderParams& p);
AutoencoderParams load_autoencoder(const std::filesystem::path& path);

// Tape builders used by the joint trainer.
struct AutoencoderVars {
    std::vector<GradTape::Var> enc_w, enc_b, dec_w, dec_b;
    std::vector<GradTape::Var> all() const;
};

AutoencoderVars autoencoder_leaves(GradTape& tape, const AutoencoderParams& p);
std::vector<GradTape::Var> encode_on_tape(GradTape& tape, GradTape::Var x,
                                          const AutoencoderVars& vars);
GradTape::Var decode_on_tape(GradTape& tape, GradTape::Var bottleneck,
                             const AutoencoderVars& vars);

}  // namespace sdcn
