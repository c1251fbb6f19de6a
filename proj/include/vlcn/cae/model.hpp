#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vlcn/cae/layers.hpp"

namespace vlcn::cae {

struct EncoderLayerSpec {
    std::size_t filters = 0;
    std::size_t kernel_size = 3;
    std::size_t stride = 2;
};

/// Network description. The encoder stages are given explicitly; the decoder
/// is derived as their exact transpose-mirror (reversed order, channel counts
/// swapped, transposed operator), followed by a single-filter stride-1 output
/// stage padded so the end-to-end map returns exactly input_length samples.
/// Hidden activations are ReLU; the output stage is sigmoid so predictions
/// live in (0,1) for the cross-entropy loss.
struct CaeArchitecture {
    std::size_t input_length = 0;
    std::vector<EncoderLayerSpec> encoder = {{128, 3, 2}, {32, 3, 2}};
    std::size_t output_kernel_size = 3;

    /// Concrete layer chain (encoder, mirrored decoder, output stage) with all
    /// paddings and lengths resolved. Throws ValidationError on impossible
    /// shapes.
    [[nodiscard]] std::vector<ConvSpec> build_layer_specs() const;
};

/// 1D convolutional autoencoder: parameters plus training metadata. Weights
/// are initialized with a seeded fan-in-scaled uniform draw
/// (U(-b, b), b = sqrt(6 / (in_channels * kernel_size)), layer i seeded with
/// seed + i); biases start at zero.
class CaeModel {
public:
    CaeModel(CaeArchitecture arch, std::uint64_t seed);

    [[nodiscard]] const CaeArchitecture& architecture() const { return arch_; }
    [[nodiscard]] std::vector<ConvLayer>& layers() { return layers_; }
    [[nodiscard]] const std::vector<ConvLayer>& layers() const { return layers_; }

    [[nodiscard]] std::uint64_t init_seed() const { return init_seed_; }
    [[nodiscard]] std::size_t epochs_seen() const { return epochs_seen_; }
    void set_epochs_seen(std::size_t n) { epochs_seen_ = n; }

    /// Full forward pass; x must be 1 x input_length.
    [[nodiscard]] Tensor1D forward(const Tensor1D& x) const;

    /// Convenience wrapper mapping a plain signal through the network.
    [[nodiscard]] std::vector<double> run(std::span<const double> signal) const;

private:
    CaeArchitecture arch_;
    std::vector<ConvLayer> layers_;
    std::uint64_t init_seed_ = 0;
    std::size_t epochs_seen_ = 0;
};

}  // namespace vlcn::cae
