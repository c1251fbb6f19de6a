#include "vlcn/cae/model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "vlcn/error.hpp"

namespace vlcn::cae {

std::vector<ConvSpec> CaeArchitecture::build_layer_specs() const {
    if (input_length < 4) {
        throw ValidationError("CaeArchitecture: input_length must be >= 4");
    }
    if (encoder.empty()) {
        throw ValidationError("CaeArchitecture: need at least one encoder layer");
    }
    for (const auto& e : encoder) {
        if (e.filters == 0 || e.kernel_size == 0 || e.stride == 0) {
            throw ValidationError("CaeArchitecture: encoder layer fields must be >= 1");
        }
    }
    if (output_kernel_size == 0) {
        throw ValidationError("CaeArchitecture: output_kernel_size must be >= 1");
    }

    std::vector<ConvSpec> specs;
    std::vector<std::size_t> enc_in_lengths;  // input length of each encoder stage
    std::size_t len = input_length;
    std::size_t channels = 1;
    for (const auto& e : encoder) {
        ConvSpec s;
        s.in_channels = channels;
        s.out_channels = e.filters;
        s.kernel_size = e.kernel_size;
        s.stride = e.stride;
        s.pad_left = (e.kernel_size - 1) / 2;
        s.pad_right = e.kernel_size - 1 - s.pad_left;
        s.activation = Activation::relu;
        enc_in_lengths.push_back(len);
        len = s.out_length(len);
        channels = e.filters;
        specs.push_back(s);
    }

    // Decoder: reversed encoder with swapped channel counts, each stage's
    // output_extend chosen so it lands exactly on the mirrored stage's input
    // length (making it the adjoint operator of that stage).
    for (std::size_t j = encoder.size(); j-- > 0;) {
        const ConvSpec& enc = specs[j];
        ConvSpec s;
        s.transposed = true;
        s.in_channels = enc.out_channels;
        s.out_channels = enc.in_channels;
        s.kernel_size = enc.kernel_size;
        s.stride = enc.stride;
        s.pad_left = enc.pad_left;
        s.pad_right = enc.pad_right;
        s.activation = Activation::relu;
        const std::size_t base = s.out_length(len);
        const std::size_t target = enc_in_lengths[j];
        if (base > target) {
            throw ValidationError("CaeArchitecture: decoder stage overshoots mirrored length");
        }
        s.output_extend = target - base;
        len = target;
        specs.push_back(s);
    }

    // Output stage: one filter, stride 1, padded to keep input_length.
    ConvSpec out;
    out.in_channels = 1;
    out.out_channels = 1;
    out.kernel_size = output_kernel_size;
    out.stride = 1;
    const std::size_t pad_total = output_kernel_size - 1;
    out.pad_left = pad_total / 2;
    out.pad_right = pad_total - out.pad_left;
    out.activation = Activation::sigmoid;
    if (out.out_length(len) != input_length) {
        throw ValidationError("CaeArchitecture: output stage cannot restore input_length");
    }
    specs.push_back(out);
    return specs;
}

CaeModel::CaeModel(CaeArchitecture arch, std::uint64_t seed)
    : arch_(std::move(arch)), init_seed_(seed) {
    const auto specs = arch_.build_layer_specs();
    layers_.reserve(specs.size());
    for (std::size_t li = 0; li < specs.size(); ++li) {
        ConvLayer layer(specs[li]);
        std::mt19937_64 eng(seed + li);
        const double fan_in =
            static_cast<double>(specs[li].in_channels * specs[li].kernel_size);
        const double bound = std::sqrt(6.0 / fan_in);
        for (double& w : layer.weights()) {
            const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
            w = bound * (2.0 * u - 1.0);
        }
        layers_.push_back(std::move(layer));
    }
}

Tensor1D CaeModel::forward(const Tensor1D& x) const {
    if (x.channels != 1 || x.length != arch_.input_length) {
        throw ValidationError("CaeModel: expected 1 x " + std::to_string(arch_.input_length) +
                              " input, got " + std::to_string(x.channels) + " x " +
                              std::to_string(x.length));
    }
    Tensor1D cur = x;
    for (const auto& layer : layers_) {
        cur = layer.forward(cur);
    }
    return cur;
}

std::vector<double> CaeModel::run(std::span<const double> signal) const {
    const Tensor1D out = forward(Tensor1D::from_signal(signal));
    return out.data;
}

}  // namespace vlcn::cae
