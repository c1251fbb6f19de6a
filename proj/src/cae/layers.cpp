#include "vlcn/cae/layers.hpp"

#include <cmath>
#include <string>

#include "vlcn/error.hpp"

namespace vlcn::cae {

namespace {

double activation_dz(Activation a, double z, double y) {
    switch (a) {
        case Activation::identity: return 1.0;
        case Activation::relu: return z > 0.0 ? 1.0 : 0.0;
        case Activation::sigmoid: return y * (1.0 - y);
    }
    return 1.0;
}

}  // namespace

double apply_activation(Activation a, double z) {
    switch (a) {
        case Activation::identity: return z;
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
    }
    return z;
}

std::size_t ConvSpec::out_length(std::size_t in_length) const {
    if (transposed) {
        const std::size_t full = (in_length - 1) * stride + kernel_size;
        if (full < pad_left + pad_right) {
            throw ValidationError("ConvSpec: transposed padding exceeds scatter length");
        }
        return full - pad_left - pad_right + output_extend;
    }
    if (in_length + pad_left + pad_right < kernel_size) {
        throw ValidationError("ConvSpec: input shorter than kernel after padding");
    }
    return (in_length + pad_left + pad_right - kernel_size) / stride + 1;
}

ConvLayer::ConvLayer(ConvSpec spec)
    : spec_(spec), w_(spec.weight_count(), 0.0), b_(spec.out_channels, 0.0) {
    if (spec_.in_channels == 0 || spec_.out_channels == 0 || spec_.kernel_size == 0 ||
        spec_.stride == 0) {
        throw ValidationError("ConvLayer: channels, kernel size and stride must be >= 1");
    }
}

Tensor1D ConvLayer::forward(const Tensor1D& x) const {
    LayerCache scratch;
    return forward_cached(x, scratch);
}

Tensor1D ConvLayer::forward_cached(const Tensor1D& x, LayerCache& cache) const {
    if (x.channels != spec_.in_channels) {
        throw ValidationError("ConvLayer: expected " + std::to_string(spec_.in_channels) +
                              " input channels, got " + std::to_string(x.channels));
    }
    const std::size_t out_len = spec_.out_length(x.length);
    const std::size_t k = spec_.kernel_size;
    Tensor1D z(spec_.out_channels, out_len);

    if (!spec_.transposed) {
        for (std::size_t f = 0; f < spec_.out_channels; ++f) {
            for (std::size_t o = 0; o < out_len; ++o) {
                double acc = b_[f];
                // input window starts at o*stride - pad_left
                for (std::size_t c = 0; c < spec_.in_channels; ++c) {
                    const double* wf = &w_[(f * spec_.in_channels + c) * k];
                    for (std::size_t t = 0; t < k; ++t) {
                        const std::size_t pos = o * spec_.stride + t;
                        if (pos < spec_.pad_left) continue;
                        const std::size_t idx = pos - spec_.pad_left;
                        if (idx >= x.length) continue;
                        acc += wf[t] * x.at(c, idx);
                    }
                }
                z.at(f, o) = acc;
            }
        }
    } else {
        for (std::size_t f = 0; f < spec_.out_channels; ++f) {
            for (std::size_t o = 0; o < out_len; ++o) z.at(f, o) = b_[f];
        }
        for (std::size_t c = 0; c < spec_.in_channels; ++c) {
            for (std::size_t i = 0; i < x.length; ++i) {
                const double xv = x.at(c, i);
                for (std::size_t f = 0; f < spec_.out_channels; ++f) {
                    const double* wf = &w_[(c * spec_.out_channels + f) * k];
                    for (std::size_t t = 0; t < k; ++t) {
                        const std::size_t pos = i * spec_.stride + t;
                        if (pos < spec_.pad_left) continue;
                        const std::size_t out_pos = pos - spec_.pad_left;
                        if (out_pos >= out_len) continue;
                        z.at(f, out_pos) += wf[t] * xv;
                    }
                }
            }
        }
    }

    Tensor1D y(spec_.out_channels, out_len);
    for (std::size_t i = 0; i < z.data.size(); ++i) {
        y.data[i] = apply_activation(spec_.activation, z.data[i]);
    }
    cache.x = x;
    cache.z = z;
    cache.y = y;
    return y;
}

Tensor1D ConvLayer::backward(const LayerCache& cache, const Tensor1D& grad_out,
                             LayerGrads& grads) const {
    const Tensor1D& x = cache.x;
    const std::size_t out_len = cache.z.length;
    const std::size_t k = spec_.kernel_size;
    if (grad_out.channels != spec_.out_channels || grad_out.length != out_len) {
        throw ValidationError("ConvLayer::backward: gradient shape mismatch");
    }
    if (grads.w.size() != w_.size()) grads.w.assign(w_.size(), 0.0);
    if (grads.b.size() != b_.size()) grads.b.assign(b_.size(), 0.0);

    Tensor1D dz(spec_.out_channels, out_len);
    for (std::size_t i = 0; i < dz.data.size(); ++i) {
        dz.data[i] = grad_out.data[i] *
                     activation_dz(spec_.activation, cache.z.data[i], cache.y.data[i]);
    }

    Tensor1D dx(x.channels, x.length);
    if (!spec_.transposed) {
        for (std::size_t f = 0; f < spec_.out_channels; ++f) {
            for (std::size_t o = 0; o < out_len; ++o) {
                const double g = dz.at(f, o);
                grads.b[f] += g;
                for (std::size_t c = 0; c < spec_.in_channels; ++c) {
                    double* gw = &grads.w[(f * spec_.in_channels + c) * k];
                    const double* wf = &w_[(f * spec_.in_channels + c) * k];
                    for (std::size_t t = 0; t < k; ++t) {
                        const std::size_t pos = o * spec_.stride + t;
                        if (pos < spec_.pad_left) continue;
                        const std::size_t idx = pos - spec_.pad_left;
                        if (idx >= x.length) continue;
                        gw[t] += g * x.at(c, idx);
                        dx.at(c, idx) += wf[t] * g;
                    }
                }
            }
        }
    } else {
        for (std::size_t f = 0; f < spec_.out_channels; ++f) {
            for (std::size_t o = 0; o < out_len; ++o) grads.b[f] += dz.at(f, o);
        }
        for (std::size_t c = 0; c < spec_.in_channels; ++c) {
            for (std::size_t i = 0; i < x.length; ++i) {
                const double xv = x.at(c, i);
                double acc = 0.0;
                for (std::size_t f = 0; f < spec_.out_channels; ++f) {
                    double* gw = &grads.w[(c * spec_.out_channels + f) * k];
                    const double* wf = &w_[(c * spec_.out_channels + f) * k];
                    for (std::size_t t = 0; t < k; ++t) {
                        const std::size_t pos = i * spec_.stride + t;
                        if (pos < spec_.pad_left) continue;
                        const std::size_t out_pos = pos - spec_.pad_left;
                        if (out_pos >= out_len) continue;
                        const double g = dz.at(f, out_pos);
                        gw[t] += g * xv;
                        acc += wf[t] * g;
                    }
                }
                dx.at(c, i) = acc;
            }
        }
    }
    return dx;
}

void ConvLayer::clamp_filter_norms(double max_norm) {
    const std::size_t k = spec_.kernel_size;
    if (spec_.transposed) {
        throw ValidationError("clamp_filter_norms: only forward conv layers carry the constraint");
    }
    for (std::size_t f = 0; f < spec_.out_channels; ++f) {
        double* wf = &w_[f * spec_.in_channels * k];
        const std::size_t count = spec_.in_channels * k;
        double sq = 0.0;
        for (std::size_t i = 0; i < count; ++i) sq += wf[i] * wf[i];
        const double norm = std::sqrt(sq);
        if (norm > max_norm) {
            const double scale = max_norm / norm;
            for (std::size_t i = 0; i < count; ++i) wf[i] *= scale;
        }
    }
}

}  // namespace vlcn::cae
