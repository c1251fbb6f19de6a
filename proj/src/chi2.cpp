#include "vlcn/chi2.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vlcn/error.hpp"

namespace vlcn {

namespace {

constexpr int kMaxTerms = 500;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// Series: P(a,x) = x^a e^-x / Gamma(a+1) * sum_n x^n / ((a+1)...(a+n)).
double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kMaxTerms; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NumericalError("regularized_gamma_p: series did not converge (a=" +
                         std::to_string(a) + ", x=" + std::to_string(x) + ")");
}

// Modified Lentz continued fraction for Q(a,x) = 1 - P(a,x).
double gamma_q_contfrac(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxTerms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NumericalError("regularized_gamma_p: continued fraction did not converge (a=" +
                         std::to_string(a) + ", x=" + std::to_string(x) + ")");
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0)) {
        throw ValidationError("regularized_gamma_p: a must be positive");
    }
    if (x < 0.0) {
        throw ValidationError("regularized_gamma_p: x must be non-negative");
    }
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double chi2_cdf(double x, std::size_t k) {
    if (k == 0) {
        throw ValidationError("chi2_cdf: degrees of freedom must be >= 1");
    }
    if (x <= 0.0) return 0.0;
    return regularized_gamma_p(0.5 * static_cast<double>(k), 0.5 * x);
}

double chi2_pdf(double x, std::size_t k) {
    if (k == 0) {
        throw ValidationError("chi2_pdf: degrees of freedom must be >= 1");
    }
    if (x <= 0.0) return 0.0;
    const double a = 0.5 * static_cast<double>(k);
    return std::exp((a - 1.0) * std::log(x) - 0.5 * x - a * std::numbers::ln2 - std::lgamma(a));
}

double chi2_quantile(double p, std::size_t k) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw ValidationError("chi2_quantile: p must lie in (0,1)");
    }
    if (k == 0) {
        throw ValidationError("chi2_quantile: degrees of freedom must be >= 1");
    }
    const double kd = static_cast<double>(k);

    // Wilson-Hilferty start, then expand a bracket around it.
    const double z = [&] {
        // Acklam-style crude normal quantile is overkill here; a couple of
        // Newton steps below absorb any start error, so use a rough logit map.
        const double t = p < 0.5 ? std::sqrt(-2.0 * std::log(p)) : std::sqrt(-2.0 * std::log1p(-p));
        const double approx = t - (2.30753 + 0.27061 * t) / (1.0 + 0.99229 * t + 0.04481 * t * t);
        return p < 0.5 ? -approx : approx;
    }();
    const double wh = kd * std::pow(1.0 - 2.0 / (9.0 * kd) + z * std::sqrt(2.0 / (9.0 * kd)), 3.0);
    double x = wh > 0.0 && std::isfinite(wh) ? wh : kd;

    double lo = 0.0;
    double hi = std::max(x * 4.0 + 10.0, kd + 10.0 * std::sqrt(2.0 * kd) + 10.0);
    for (int i = 0; chi2_cdf(hi, k) < p; ++i) {
        hi *= 2.0;
        if (i > 200) {
            throw NumericalError("chi2_quantile: cannot bracket quantile (p=" +
                                 std::to_string(p) + ", k=" + std::to_string(k) + ")");
        }
    }
    if (x <= lo || x >= hi) x = 0.5 * (lo + hi);

    for (int iter = 0; iter < 200; ++iter) {
        const double f = chi2_cdf(x, k) - p;
        if (f > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        const double dfdx = chi2_pdf(x, k);
        double next = dfdx > 0.0 ? x - f / dfdx : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) {
            next = 0.5 * (lo + hi);  // Newton left the bracket; bisect
        }
        const double step = std::fabs(next - x);
        x = next;
        if (step <= 1e-13 * std::max(x, 1.0) || hi - lo <= 1e-13 * std::max(hi, 1.0)) {
            return x;
        }
    }
    throw NumericalError("chi2_quantile: no convergence after 200 iterations (p=" +
                         std::to_string(p) + ", k=" + std::to_string(k) +
                         ", bracket=[" + std::to_string(lo) + "," + std::to_string(hi) + "])");
}

}  // namespace vlcn
