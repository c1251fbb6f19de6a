#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vlcn/time_series.hpp"

namespace vlcn {

/// Impulse response of the generalized Wiener filter 1/(1-z^-1)^(alpha/2),
/// truncated to m taps. h[0] = 1 exactly; for alpha in (0,2) the taps are
/// positive and strictly decreasing; alpha = 2 gives all ones (integrator)
/// and alpha = 0 collapses to the identity.
struct FilterWeights {
    std::vector<double> h;
    double alpha = 0.0;
};

/// One 1/f^alpha component of a composite noise process. sigma is the standard
/// deviation of the driving white sequence; weight scales the colored result.
struct NoiseComponent {
    double alpha = 0.0;
    double sigma = 1.0;
    double weight = 1.0;
};

/// Full description of a synthetic noise capture. Component index j draws its
/// white sequence from seed + j, so adding a component never perturbs the
/// streams of existing ones. discard_prefix drops that many leading colored
/// samples (fractional-alpha noise is transient-biased near the origin);
/// default keeps everything.
struct NoiseRecipe {
    std::vector<NoiseComponent> components;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    std::size_t discard_prefix = 0;
};

/// Taps of the generalized Wiener filter via the recursion
/// h_0 = 1, h_j = (alpha/2 + j - 1) * h_{j-1} / j. alpha must lie in [0,2];
/// the endpoints degenerate to the identity filter and the integrator.
[[nodiscard]] FilterWeights wiener_weights(double alpha, std::size_t m);

/// Deterministic i.i.d. zero-mean Gaussian samples: mt19937_64 keyed by seed,
/// uniforms from the top 53 bits, Marsaglia polar transform, then a single
/// multiply by sigma. Same (length, sigma, seed) always yields the same bits,
/// and scaling sigma scales every sample by exactly that factor.
[[nodiscard]] TimeSeries gaussian_white(std::size_t length, double sigma, std::uint64_t seed,
                                        double sample_rate_hz = 1.0);

/// Colored-noise synthesis: each component's unit-variance white sequence is
/// pushed through the truncated causal convolution
/// eta_i = sum_{j=0..i} h_j w_{i-j}, scaled by weight * sigma, summed in
/// component order, and offset by mean. Direct evaluation up to 2^13 samples,
/// FFT block convolution beyond.
[[nodiscard]] TimeSeries synthesize(const NoiseRecipe& recipe, double sample_rate_hz = 1.0);

namespace detail {
/// Unit-variance stream behind gaussian_white; exposed for sub-seeding tests.
[[nodiscard]] std::vector<double> unit_gaussians(std::size_t length, std::uint64_t seed);
}  // namespace detail

}  // namespace vlcn
