#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vlcn/time_series.hpp"

namespace vlcn {

/// Overlapping Allan variance evaluated over a grid of cluster sizes.
/// cluster_sizes is strictly increasing with every n < N/2; taus[i] =
/// cluster_sizes[i] / sample_rate; adev[i] = sqrt(avar[i]).
struct AvarCurve {
    std::vector<std::size_t> cluster_sizes;
    std::vector<double> taus;  ///< seconds
    std::vector<double> avar;
    std::vector<double> adev;
    std::size_t n_samples = 0;       ///< length of the analyzed series
    double sample_rate_hz = 1.0;
};

/// Least-squares line through (log10 tau, log10 adev) over one tau window.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;  ///< log10(adev) at tau = 1 s along the fitted line
    double tau_lo = 0.0;
    double tau_hi = 0.0;
    double residual = 0.0;   ///< rms residual in log10 units
};

/// Identified noise-component coefficients. A coefficient is absent when no
/// log-log segment matched its slope signature, mirroring "not observed" rows
/// in scenario tables. The accompanying fit describes the matched segment.
struct NoiseCoefficients {
    std::optional<double> white_n;        ///< adev extrapolated to tau = 1 s
    std::optional<double> flicker_b;      ///< plateau level * sqrt(pi / (2 ln 2))
    std::optional<double> random_walk_k;  ///< adev extrapolated to tau = 3 s
    std::optional<SlopeFit> white_fit;
    std::optional<SlopeFit> flicker_fit;
    std::optional<SlopeFit> random_walk_fit;
};

struct ExtractOptions {
    /// |fitted slope - target| acceptance band on the adev log-log plot.
    /// Targets are -1/2 (white), 0 (flicker), +1/2 (random walk).
    double slope_tolerance = 0.15;
    /// Sliding-window width in decades of tau.
    double window_decades = 1.0;
    /// Drop curve tail points with fewer than this many non-overlapping
    /// cluster pairs (N / 2n); their variance estimates are too uncertain to
    /// classify a slope from.
    std::size_t min_cluster_pairs = 8;
};

/// Fully overlapping Allan variance, stride 1 in the cluster start:
/// sigma^2(tau) = 1/(2(N-2n+1)) * sum_{k=1..N-2n+1} (mean2_k - mean1_k)^2
/// where mean1/mean2 average the adjacent length-n clusters starting at k.
/// Throws per offending cluster size when n >= N/2, and for N < 4.
[[nodiscard]] AvarCurve allan_variance(const TimeSeries& ts,
                                       const std::vector<std::size_t>& cluster_sizes);

/// Log-spaced unique cluster sizes from 1 to floor(n_samples/2)-1 with about
/// points_per_decade entries per decade.
[[nodiscard]] std::vector<std::size_t> default_cluster_grid(std::size_t n_samples,
                                                            std::size_t points_per_decade);

/// Classify sliding one-decade log-log segments of the Allan deviation and
/// read noise coefficients off the matching fitted lines:
///   white       slope -1/2   N = adev_fit(tau = 1 s)
///   flicker     slope  0     B = adev_fit(tau*) * sqrt(pi/(2 ln 2)), plateau mid
///   random walk slope +1/2   K = adev_fit(tau = 3 s)
/// N and K deliberately extrapolate the segment line when tau = 1 or 3 lies
/// outside the segment. Requires >= 3 points per decade over >= 2 decades.
[[nodiscard]] NoiseCoefficients extract_coefficients(const AvarCurve& curve,
                                                     const ExtractOptions& opts = {});

/// Single least-squares slope of log10(adev) vs log10(tau) over
/// [tau_lo, tau_hi]. Helper for slope-law checks on synthesized noise.
[[nodiscard]] SlopeFit fit_loglog_slope(const AvarCurve& curve, double tau_lo, double tau_hi);

}  // namespace vlcn
