#include "vlcn/noise.hpp"

#include <cmath>
#include <random>
#include <string>

#include "vlcn/detail/fft.hpp"
#include "vlcn/error.hpp"

namespace vlcn {

namespace {

constexpr std::size_t kDirectConvLimit = std::size_t{1} << 13;

void validate_alpha(double alpha) {
    if (!(alpha >= 0.0) || !(alpha <= 2.0)) {
        throw ValidationError("alpha must lie in [0,2], got " + std::to_string(alpha));
    }
}

std::vector<double> color(double alpha, const std::vector<double>& white) {
    if (alpha == 0.0) {
        return white;  // identity filter, bit-exact pass-through
    }
    const FilterWeights fw = wiener_weights(alpha, white.size());
    if (white.size() <= kDirectConvLimit) {
        return detail::convolve_direct(fw.h, white, white.size());
    }
    return detail::convolve_fft(fw.h, white, white.size());
}

}  // namespace

FilterWeights wiener_weights(double alpha, std::size_t m) {
    validate_alpha(alpha);
    if (m == 0) {
        throw ValidationError("wiener_weights: need at least one tap");
    }
    FilterWeights fw;
    fw.alpha = alpha;
    fw.h.resize(m);
    fw.h[0] = 1.0;
    const double half = 0.5 * alpha;
    for (std::size_t j = 1; j < m; ++j) {
        const double jd = static_cast<double>(j);
        fw.h[j] = (half + jd - 1.0) * fw.h[j - 1] / jd;
    }
    return fw;
}

namespace detail {

std::vector<double> unit_gaussians(std::size_t length, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    const auto uniform = [&eng] {
        // top 53 bits -> [0,1); avoids distribution objects, which are not
        // specified bit-identically across standard libraries
        return static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };
    std::vector<double> out;
    out.reserve(length);
    while (out.size() < length) {
        const double u = 2.0 * uniform() - 1.0;
        const double v = 2.0 * uniform() - 1.0;
        const double s = u * u + v * v;
        if (s >= 1.0 || s == 0.0) continue;
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        out.push_back(u * f);
        if (out.size() < length) out.push_back(v * f);
    }
    return out;
}

}  // namespace detail

TimeSeries gaussian_white(std::size_t length, double sigma, std::uint64_t seed,
                          double sample_rate_hz) {
    if (length == 0) {
        throw ValidationError("gaussian_white: length must be >= 1");
    }
    if (!(sigma > 0.0)) {
        throw ValidationError("gaussian_white: sigma must be positive");
    }
    std::vector<double> z = detail::unit_gaussians(length, seed);
    for (double& v : z) v *= sigma;
    return TimeSeries(std::move(z), sample_rate_hz);
}

TimeSeries synthesize(const NoiseRecipe& recipe, double sample_rate_hz) {
    if (recipe.length == 0) {
        throw ValidationError("synthesize: length must be >= 1");
    }
    if (recipe.components.empty()) {
        throw ValidationError("synthesize: recipe needs at least one component");
    }
    for (const auto& c : recipe.components) {
        validate_alpha(c.alpha);
        if (!(c.sigma > 0.0)) {
            throw ValidationError("synthesize: component sigma must be positive");
        }
        if (!std::isfinite(c.weight)) {
            throw ValidationError("synthesize: component weight must be finite");
        }
    }

    const std::size_t gen_len = recipe.length + recipe.discard_prefix;
    std::vector<double> out(recipe.length, 0.0);
    for (std::size_t idx = 0; idx < recipe.components.size(); ++idx) {
        const auto& comp = recipe.components[idx];
        const std::uint64_t sub_seed = recipe.seed + idx;
        const std::vector<double> white = detail::unit_gaussians(gen_len, sub_seed);
        const std::vector<double> colored = color(comp.alpha, white);
        const double scale = comp.weight * comp.sigma;
        for (std::size_t i = 0; i < recipe.length; ++i) {
            out[i] += scale * colored[recipe.discard_prefix + i];
        }
    }
    if (recipe.mean != 0.0) {
        for (double& v : out) v += recipe.mean;
    }
    return TimeSeries(std::move(out), sample_rate_hz);
}

}  // namespace vlcn
