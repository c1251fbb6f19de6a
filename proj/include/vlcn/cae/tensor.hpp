#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vlcn::cae {

/// Dense (channels, length) array of doubles, row-major by channel.
struct Tensor1D {
    std::size_t channels = 0;
    std::size_t length = 0;
    std::vector<double> data;

    Tensor1D() = default;
    Tensor1D(std::size_t channels_, std::size_t length_)
        : channels(channels_), length(length_), data(channels_ * length_, 0.0) {}

    [[nodiscard]] static Tensor1D from_signal(std::span<const double> signal) {
        Tensor1D t(1, signal.size());
        std::copy(signal.begin(), signal.end(), t.data.begin());
        return t;
    }

    [[nodiscard]] double& at(std::size_t c, std::size_t i) { return data[c * length + i]; }
    [[nodiscard]] double at(std::size_t c, std::size_t i) const { return data[c * length + i]; }
    [[nodiscard]] std::size_t size() const { return data.size(); }
};

}  // namespace vlcn::cae
