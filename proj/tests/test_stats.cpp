#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "vlcn/chi2.hpp"
#include "vlcn/error.hpp"
#include "vlcn/noise.hpp"
#include "vlcn/stats.hpp"

using namespace vlcn;

namespace {

// Independent chi-square CDF oracle: composite-Simpson quadrature of the
// density after the substitution x = u^2, which removes the k=1 endpoint
// singularity. Good to ~1e-12 for the ranges used here.
double chi2_cdf_quadrature(double x, std::size_t k) {
    if (x <= 0.0) return 0.0;
    const double a = 0.5 * static_cast<double>(k);
    const double log_norm = -a * std::numbers::ln2 - std::lgamma(a);
    const auto integrand = [&](double u) {
        if (u <= 0.0) {
            // 2u * pdf(u^2) -> 0 except for k = 1, where it tends to
            // 2 exp(log_norm) = sqrt(2/pi)
            return k == 1 ? 2.0 * std::exp(log_norm) : 0.0;
        }
        // pdf(u^2) * 2u
        const double logf = (a - 1.0) * 2.0 * std::log(u) - 0.5 * u * u + log_norm;
        return 2.0 * u * std::exp(logf);
    };
    const double hi = std::sqrt(x);
    const int panels = 20000;  // even
    const double h = hi / panels;
    double acc = integrand(0.0) + integrand(hi);
    for (int i = 1; i < panels; ++i) {
        acc += integrand(i * h) * ((i % 2) ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

double chi2_quantile_oracle(double p, std::size_t k) {
    double lo = 0.0, hi = 1.0;
    while (chi2_cdf_quadrature(hi, k) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (chi2_cdf_quadrature(mid, k) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TimeSeries white_series(std::size_t n, std::uint64_t seed) {
    return gaussian_white(n, 1.0, seed);
}

TimeSeries random_walk_series(std::size_t n, std::uint64_t seed) {
    const TimeSeries w = white_series(n, seed);
    std::vector<double> walk(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += w[i];
        walk[i] = acc;
    }
    return TimeSeries(std::move(walk), 1.0);
}

}  // namespace

TEST_CASE("autocorrelation hand cases") {
    const TimeSeries ones({1.0, 1.0, 1.0, 1.0}, 1.0);
    CHECK(autocorrelation(ones, 1)[0] == doctest::Approx(0.75).epsilon(1e-15));

    const TimeSeries alt({1.0, -1.0, 1.0, -1.0}, 1.0);
    CHECK(autocorrelation(alt, 1)[0] == doctest::Approx(-0.75).epsilon(1e-15));

    const TimeSeries zeros({0.0, 0.0, 0.0}, 1.0);
    CHECK_THROWS_AS((void)autocorrelation(zeros, 1), ValidationError);
    CHECK_THROWS_AS((void)autocorrelation(ones, 4), ValidationError);
}

TEST_CASE("chi2_quantile closed forms at k=2") {
    // chi-square with 2 dof is Exponential(1/2): quantile = -2 ln(1-p)
    CHECK(chi2_quantile(0.95, 2) == doctest::Approx(-2.0 * std::log(0.05)).epsilon(1e-10));
    CHECK(chi2_quantile(0.5, 2) == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-10));
    CHECK(std::fabs(chi2_quantile(0.95, 2) - 5.9915) < 1e-4);
    CHECK(std::fabs(chi2_quantile(0.5, 2) - 1.3863) < 1e-4);
}

TEST_CASE("chi2_quantile matches the quadrature oracle") {
    struct Case {
        double p;
        std::size_t k;
    };
    const Case cases[] = {{0.95, 1}, {0.99, 1}, {0.05, 3}, {0.95, 10}, {0.5, 7}, {0.975, 100}};
    for (const auto& c : cases) {
        const double expect = chi2_quantile_oracle(c.p, c.k);
        const double got = chi2_quantile(c.p, c.k);
        CAPTURE(c.p);
        CAPTURE(c.k);
        CHECK(got == doctest::Approx(expect).epsilon(1e-8));
    }
    CHECK(std::fabs(chi2_quantile(0.95, 1) - 3.8415) < 1e-3);
}

TEST_CASE("chi2_quantile monotone in p and k, round-trips the CDF") {
    double prev_p = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double p = i / 101.0;
        const double q = chi2_quantile(p, 5);
        CHECK(q > prev_p);
        prev_p = q;
        CHECK(chi2_cdf(q, 5) == doctest::Approx(p).epsilon(1e-8));
    }
    double prev_k = 0.0;
    for (std::size_t k = 1; k <= 100; ++k) {
        const double q = chi2_quantile(0.9, k);
        CHECK(q > prev_k);
        prev_k = q;
    }
    CHECK_THROWS_AS((void)chi2_quantile(0.0, 3), ValidationError);
    CHECK_THROWS_AS((void)chi2_quantile(1.0, 3), ValidationError);
    CHECK_THROWS_AS((void)chi2_quantile(0.5, 0), ValidationError);
}

TEST_CASE("ljung_box statistics are non-decreasing in lag") {
    const TimeSeries ts = white_series(500, 21);
    const LjungBoxResult res = ljung_box(ts, 50);
    REQUIRE(res.q_stats.size() == 50);
    for (std::size_t m = 1; m < res.q_stats.size(); ++m) {
        CHECK(res.q_stats[m] >= res.q_stats[m - 1]);
    }
    for (std::size_t m = 0; m < res.q_stats.size(); ++m) {
        CHECK(res.reject[m] == (res.q_stats[m] > res.thresholds[m]));
    }
}

TEST_CASE("ljung_box rejects a strongly anti-correlated series") {
    std::vector<double> alt(100);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
    const LjungBoxResult res = ljung_box(TimeSeries(alt, 1.0), 1);
    // rho(1) = -99/100, Q_1 = 100*102*0.9801/99 ~ 101
    CHECK(res.q_stats[0] == doctest::Approx(100.0 * 102.0 * 0.9801 / 99.0).epsilon(1e-12));
    CHECK(res.thresholds[0] == doctest::Approx(3.841458820694124).epsilon(1e-9));
    CHECK(res.reject[0]);
}

TEST_CASE("ljung_box rejects a random walk at every lag") {
    const LjungBoxResult res = ljung_box(random_walk_series(4000, 5), 100);
    for (std::size_t m = 0; m < 100; ++m) {
        CAPTURE(m);
        REQUIRE(res.reject[m]);
    }
}

TEST_CASE("ljung_box under the null keeps per-lag rejections near alpha") {
    const std::size_t trials = 300;
    const std::size_t n = 4000;
    const std::size_t lags = 100;
    std::vector<std::size_t> rejections(lags, 0);
    for (std::size_t t = 0; t < trials; ++t) {
        const LjungBoxResult res = ljung_box(white_series(n, 1000 + t), lags);
        for (std::size_t m = 0; m < lags; ++m) {
            if (res.reject[m]) ++rejections[m];
        }
    }
    for (std::size_t m = 0; m < lags; ++m) {
        const double rate = static_cast<double>(rejections[m]) / trials;
        CAPTURE(m);
        CHECK(rate <= 0.10);
    }
}

TEST_CASE("ljung_box demean handling") {
    // raw mode reproduces the literal normalized autocorrelation of a
    // DC-dominated series; demean mode sees only the fluctuation
    const TimeSeries ones({1.0, 1.0, 1.0, 1.0}, 1.0);
    LjungBoxOptions raw;
    raw.demean = false;
    const LjungBoxResult res = ljung_box(ones, 1, raw);
    CHECK(res.q_stats[0] == doctest::Approx(4.0 * 6.0 * 0.5625 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)ljung_box(ones, 1), ValidationError);  // demeaned constant is all zeros
}
