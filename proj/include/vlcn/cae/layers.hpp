#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vlcn/cae/tensor.hpp"

namespace vlcn::cae {

enum class Activation { identity, relu, sigmoid };

[[nodiscard]] double apply_activation(Activation a, double z);

/// Strided 1D convolution (cross-correlation) or its transpose, with
/// per-channel bias and a pointwise activation.
///
/// Forward shapes:
///   conv   out_len = floor((in_len + pad_left + pad_right - k) / stride) + 1
///   tconv  out_len = (in_len - 1) * stride + k - pad_left - pad_right
///                    + output_extend
/// A transposed layer with output_extend matched to the source length is the
/// exact adjoint of the convolution it mirrors, which is what makes the
/// encoder/decoder stack restore the input length sample for sample.
struct ConvSpec {
    std::size_t in_channels = 1;
    std::size_t out_channels = 1;
    std::size_t kernel_size = 3;
    std::size_t stride = 1;
    std::size_t pad_left = 0;
    std::size_t pad_right = 0;
    std::size_t output_extend = 0;  // transposed layers only
    Activation activation = Activation::relu;
    bool transposed = false;

    [[nodiscard]] std::size_t weight_count() const {
        return in_channels * out_channels * kernel_size;
    }
    [[nodiscard]] std::size_t out_length(std::size_t in_length) const;
};

/// Inputs / intermediates captured by a training-mode forward pass.
struct LayerCache {
    Tensor1D x;  ///< layer input
    Tensor1D z;  ///< pre-activation
    Tensor1D y;  ///< activation output
};

struct LayerGrads {
    std::vector<double> w;
    std::vector<double> b;
};

class ConvLayer {
public:
    explicit ConvLayer(ConvSpec spec);

    [[nodiscard]] const ConvSpec& spec() const { return spec_; }
    [[nodiscard]] std::vector<double>& weights() { return w_; }
    [[nodiscard]] const std::vector<double>& weights() const { return w_; }
    [[nodiscard]] std::vector<double>& biases() { return b_; }
    [[nodiscard]] const std::vector<double>& biases() const { return b_; }

    [[nodiscard]] Tensor1D forward(const Tensor1D& x) const;
    /// forward + stash everything backward() needs
    Tensor1D forward_cached(const Tensor1D& x, LayerCache& cache) const;
    /// Given dL/dy, accumulates dL/dw and dL/db into grads and returns dL/dx.
    [[nodiscard]] Tensor1D backward(const LayerCache& cache, const Tensor1D& grad_out,
                                    LayerGrads& grads) const;

    /// Rescale any filter whose L2 norm exceeds max_norm back onto the ball.
    void clamp_filter_norms(double max_norm);

private:
    // conv kernels are indexed [out_c][in_c][t]; transposed kernels
    // [in_c][out_c][t], matching the adjoint pairing.
    ConvSpec spec_;
    std::vector<double> w_;
    std::vector<double> b_;
};

}  // namespace vlcn::cae
