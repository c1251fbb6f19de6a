#include "vlcn/allan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vlcn/error.hpp"

namespace vlcn {

namespace {

struct Window {
    std::size_t first = 0;
    std::size_t last = 0;  // inclusive
    SlopeFit fit;
};

SlopeFit fit_line(const std::vector<double>& lt, const std::vector<double>& ls,
                  std::size_t first, std::size_t last) {
    const std::size_t n = last - first + 1;
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        sx += lt[i];
        sy += ls[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        sxx += (lt[i] - mx) * (lt[i] - mx);
        sxy += (lt[i] - mx) * (ls[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.tau_lo = std::pow(10.0, lt[first]);
    fit.tau_hi = std::pow(10.0, lt[last]);
    double rss = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        const double r = ls[i] - (fit.intercept + fit.slope * lt[i]);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / static_cast<double>(n));
    return fit;
}

double eval_adev(const SlopeFit& fit, double tau) {
    return std::pow(10.0, fit.intercept + fit.slope * std::log10(tau));
}

}  // namespace

AvarCurve allan_variance(const TimeSeries& ts, const std::vector<std::size_t>& cluster_sizes) {
    const std::size_t n_total = ts.size();
    if (n_total < 4) {
        throw ValidationError("allan_variance: need at least 4 samples");
    }
    if (cluster_sizes.empty()) {
        throw ValidationError("allan_variance: empty cluster-size grid");
    }
    for (std::size_t i = 0; i < cluster_sizes.size(); ++i) {
        if (cluster_sizes[i] == 0) {
            throw ValidationError("allan_variance: cluster size 0 is invalid");
        }
        if (i > 0 && cluster_sizes[i] <= cluster_sizes[i - 1]) {
            throw ValidationError("allan_variance: cluster sizes must be strictly increasing");
        }
        if (2 * cluster_sizes[i] >= n_total) {
            throw ValidationError("allan_variance: cluster size " +
                                  std::to_string(cluster_sizes[i]) + " is not < N/2 for N=" +
                                  std::to_string(n_total));
        }
    }

    // Prefix sums give each cluster mean in O(1). All sums are accumulated in
    // ascending index order so results match a literal evaluation of the
    // definition term for term.
    std::vector<double> prefix(n_total + 1, 0.0);
    for (std::size_t i = 0; i < n_total; ++i) {
        prefix[i + 1] = prefix[i] + ts[i];
    }

    AvarCurve curve;
    curve.n_samples = n_total;
    curve.sample_rate_hz = ts.sample_rate_hz();
    curve.cluster_sizes = cluster_sizes;
    curve.taus.resize(cluster_sizes.size());
    curve.avar.resize(cluster_sizes.size());
    curve.adev.resize(cluster_sizes.size());

    for (std::size_t ci = 0; ci < cluster_sizes.size(); ++ci) {
        const std::size_t n = cluster_sizes[ci];
        const double nd = static_cast<double>(n);
        const std::size_t terms = n_total - 2 * n + 1;
        double acc = 0.0;
        for (std::size_t k = 0; k < terms; ++k) {
            const double mean1 = (prefix[k + n] - prefix[k]) / nd;
            const double mean2 = (prefix[k + 2 * n] - prefix[k + n]) / nd;
            const double d = mean2 - mean1;
            acc += d * d;
        }
        curve.avar[ci] = acc / (2.0 * static_cast<double>(terms));
        curve.adev[ci] = std::sqrt(curve.avar[ci]);
        curve.taus[ci] = static_cast<double>(n) / ts.sample_rate_hz();
    }
    return curve;
}

std::vector<std::size_t> default_cluster_grid(std::size_t n_samples,
                                              std::size_t points_per_decade) {
    if (n_samples < 8) {
        throw ValidationError("default_cluster_grid: need at least 8 samples");
    }
    if (points_per_decade == 0) {
        throw ValidationError("default_cluster_grid: points_per_decade must be >= 1");
    }
    const std::size_t n_max = n_samples / 2 - 1;
    std::vector<std::size_t> grid;
    const double step = 1.0 / static_cast<double>(points_per_decade);
    for (double e = 0.0;; e += step) {
        const double v = std::pow(10.0, e);
        if (v > static_cast<double>(n_max) + 0.5) break;
        const auto n = static_cast<std::size_t>(std::llround(v));
        const std::size_t clamped = std::min(std::max<std::size_t>(n, 1), n_max);
        if (grid.empty() || clamped > grid.back()) {
            grid.push_back(clamped);
        }
    }
    return grid;
}

NoiseCoefficients extract_coefficients(const AvarCurve& curve, const ExtractOptions& opts) {
    // Keep points whose estimate rests on enough non-overlapping cluster pairs.
    std::vector<double> lt, ls;
    for (std::size_t i = 0; i < curve.cluster_sizes.size(); ++i) {
        const std::size_t n = curve.cluster_sizes[i];
        if (curve.n_samples / (2 * n) < opts.min_cluster_pairs) continue;
        if (!(curve.adev[i] > 0.0)) continue;
        lt.push_back(std::log10(curve.taus[i]));
        ls.push_back(std::log10(curve.adev[i]));
    }
    if (lt.size() < 6) {
        throw ValidationError("extract_coefficients: too few usable points (" +
                              std::to_string(lt.size()) + ")");
    }
    const double span = lt.back() - lt.front();
    if (span < 2.0 || static_cast<double>(lt.size()) / span < 3.0) {
        throw ValidationError(
            "extract_coefficients: need >= 3 points per decade over >= 2 decades (have " +
            std::to_string(lt.size()) + " points over " + std::to_string(span) + " decades)");
    }

    std::vector<Window> windows;
    for (std::size_t i = 0; i < lt.size(); ++i) {
        std::size_t j = i;
        while (j + 1 < lt.size() && lt[j + 1] <= lt[i] + opts.window_decades) ++j;
        if (j - i + 1 < 3) continue;
        if (lt[j] - lt[i] < 0.8 * opts.window_decades) continue;  // truncated tail window
        Window w;
        w.first = i;
        w.last = j;
        w.fit = fit_line(lt, ls, i, j);
        windows.push_back(w);
    }
    if (windows.empty()) {
        throw ValidationError("extract_coefficients: no full-width fit window available");
    }

    NoiseCoefficients out;
    const auto pick = [&](double target) -> std::optional<SlopeFit> {
        const Window* best = nullptr;
        for (const auto& w : windows) {
            if (std::fabs(w.fit.slope - target) > opts.slope_tolerance) continue;
            if (!best || std::fabs(w.fit.slope - target) < std::fabs(best->fit.slope - target)) {
                best = &w;
            }
        }
        if (!best) return std::nullopt;
        return best->fit;
    };

    out.white_fit = pick(-0.5);
    if (out.white_fit) {
        out.white_n = eval_adev(*out.white_fit, 1.0);
    }
    out.flicker_fit = pick(0.0);
    if (out.flicker_fit) {
        const double tau_mid = std::sqrt(out.flicker_fit->tau_lo * out.flicker_fit->tau_hi);
        out.flicker_b = eval_adev(*out.flicker_fit, tau_mid) *
                        std::sqrt(std::numbers::pi / (2.0 * std::numbers::ln2));
    }
    out.random_walk_fit = pick(0.5);
    if (out.random_walk_fit) {
        out.random_walk_k = eval_adev(*out.random_walk_fit, 3.0);
    }
    return out;
}

SlopeFit fit_loglog_slope(const AvarCurve& curve, double tau_lo, double tau_hi) {
    std::vector<double> lt, ls;
    for (std::size_t i = 0; i < curve.taus.size(); ++i) {
        if (curve.taus[i] < tau_lo || curve.taus[i] > tau_hi) continue;
        if (!(curve.adev[i] > 0.0)) continue;
        lt.push_back(std::log10(curve.taus[i]));
        ls.push_back(std::log10(curve.adev[i]));
    }
    if (lt.size() < 2) {
        throw ValidationError("fit_loglog_slope: fewer than 2 curve points in window");
    }
    return fit_line(lt, ls, 0, lt.size() - 1);
}

}  // namespace vlcn
