#include "vlcn/stats.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "vlcn/chi2.hpp"
#include "vlcn/error.hpp"

namespace vlcn {

namespace {

std::vector<double> autocorrelation_raw(std::span<const double> x, std::size_t max_lag) {
    const std::size_t n = x.size();
    if (max_lag == 0) {
        throw ValidationError("autocorrelation: max_lag must be >= 1");
    }
    if (max_lag >= n) {
        throw ValidationError("autocorrelation: max_lag " + std::to_string(max_lag) +
                              " must be < series length " + std::to_string(n));
    }
    double denom = 0.0;
    for (double v : x) denom += v * v;
    if (denom == 0.0) {
        throw ValidationError("autocorrelation: all-zero series, normalization undefined");
    }
    std::vector<double> rho(max_lag);
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t j = k; j < n; ++j) {
            num += x[j] * x[j - k];
        }
        rho[k - 1] = num / denom;
    }
    return rho;
}

}  // namespace

std::vector<double> autocorrelation(const TimeSeries& ts, std::size_t max_lag) {
    return autocorrelation_raw(ts.view(), max_lag);
}

LjungBoxResult ljung_box(const TimeSeries& ts, std::size_t max_lag, const LjungBoxOptions& opts) {
    if (!(opts.alpha > 0.0) || !(opts.alpha < 1.0)) {
        throw ValidationError("ljung_box: alpha must lie in (0,1)");
    }
    const std::size_t n = ts.size();

    std::vector<double> rho;
    if (opts.demean) {
        std::vector<double> centered(ts.samples());
        const double mean = std::accumulate(centered.begin(), centered.end(), 0.0) /
                            static_cast<double>(n);
        for (double& v : centered) v -= mean;
        rho = autocorrelation_raw(centered, max_lag);
    } else {
        rho = autocorrelation_raw(ts.view(), max_lag);
    }

    LjungBoxResult res;
    res.alpha = opts.alpha;
    res.n_samples = n;
    res.q_stats.resize(max_lag);
    res.thresholds.resize(max_lag);
    res.reject.resize(max_lag);

    const double nd = static_cast<double>(n);
    double partial = 0.0;
    for (std::size_t m = 1; m <= max_lag; ++m) {
        partial += rho[m - 1] * rho[m - 1] / (nd - static_cast<double>(m));
        res.q_stats[m - 1] = nd * (nd + 2.0) * partial;
        res.thresholds[m - 1] = chi2_quantile(1.0 - opts.alpha, m);
        res.reject[m - 1] = res.q_stats[m - 1] > res.thresholds[m - 1];
    }
    return res;
}

}  // namespace vlcn
