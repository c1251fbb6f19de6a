#include "vlcn/cae/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vlcn/error.hpp"

namespace vlcn::cae {

namespace {

void check_shapes(const Tensor1D& a, const Tensor1D& b, const char* who) {
    if (a.channels != b.channels || a.length != b.length) {
        throw ValidationError(std::string(who) + ": shape mismatch (" +
                              std::to_string(a.channels) + "x" + std::to_string(a.length) +
                              " vs " + std::to_string(b.channels) + "x" +
                              std::to_string(b.length) + ")");
    }
}

}  // namespace

double bce_loss(const Tensor1D& pred, const Tensor1D& target) {
    check_shapes(pred, target, "bce_loss");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.data.size(); ++i) {
        const double p = std::clamp(pred.data[i], kBceClamp, 1.0 - kBceClamp);
        const double t = target.data[i];
        acc -= t * std::log(p) + (1.0 - t) * std::log(1.0 - p);
    }
    return acc / static_cast<double>(pred.data.size());
}

Tensor1D bce_grad(const Tensor1D& pred, const Tensor1D& target) {
    check_shapes(pred, target, "bce_grad");
    Tensor1D g(pred.channels, pred.length);
    const double inv_n = 1.0 / static_cast<double>(pred.data.size());
    for (std::size_t i = 0; i < pred.data.size(); ++i) {
        const double raw = pred.data[i];
        if (raw < kBceClamp || raw > 1.0 - kBceClamp) {
            g.data[i] = 0.0;  // clamped region is flat
            continue;
        }
        const double t = target.data[i];
        g.data[i] = inv_n * (raw - t) / (raw * (1.0 - raw));
    }
    return g;
}

double rmse(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("rmse: length mismatch (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
    }
    if (a.empty()) {
        throw ValidationError("rmse: empty input");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace vlcn::cae
