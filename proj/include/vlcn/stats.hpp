#pragma once

#include <cstddef>
#include <vector>

#include "vlcn/time_series.hpp"

namespace vlcn {

/// Ljung-Box portmanteau test report. Lags are 1-based: entry m-1 of each
/// vector belongs to lag m. q_stats is non-decreasing in m (every summand of
/// the statistic is non-negative) and reject[m] = q_stats[m] > thresholds[m]
/// exactly.
struct LjungBoxResult {
    std::vector<double> q_stats;     ///< Q_m for m = 1..max_lag
    std::vector<double> thresholds;  ///< chi-square (1-alpha) quantile, m dof
    std::vector<bool> reject;        ///< null (white noise) rejected at lag m
    double alpha = 0.0;
    std::size_t n_samples = 0;
};

struct LjungBoxOptions {
    double alpha = 0.05;
    /// Subtract the sample mean before computing autocorrelations. DC-offset
    /// captures need this; raw mode keeps the literal normalized correlation
    /// of the series as given.
    bool demean = true;
};

/// Sample autocorrelation p(k) = sum_{j=k+1..N} x_j x_{j-k} / sum_j x_j^2 for
/// k = 1..max_lag (p(0) would be 1 and is not returned). Computed on the series
/// as given; callers wanting mean removal subtract it first. Throws on an
/// all-zero series (undefined ratio) or max_lag >= N.
[[nodiscard]] std::vector<double> autocorrelation(const TimeSeries& ts, std::size_t max_lag);

/// Ljung-Box Q-test against the white-noise null:
/// Q_m = N(N+2) sum_{k=1..m} p(k)^2 / (N-k), rejected when Q_m exceeds the
/// chi-square (1-alpha) quantile with m degrees of freedom.
[[nodiscard]] LjungBoxResult ljung_box(const TimeSeries& ts, std::size_t max_lag,
                                       const LjungBoxOptions& opts = {});

}  // namespace vlcn
