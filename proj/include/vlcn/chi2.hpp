#pragma once

#include <cstddef>

namespace vlcn {

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a), a > 0,
/// x >= 0. Series expansion below x = a + 1, Lentz continued fraction above;
/// both converge to ~1e-15 relative.
[[nodiscard]] double regularized_gamma_p(double a, double x);

/// Chi-square CDF with k degrees of freedom: P(k/2, x/2).
[[nodiscard]] double chi2_cdf(double x, std::size_t k);

/// Chi-square density with k degrees of freedom.
[[nodiscard]] double chi2_pdf(double x, std::size_t k);

/// Inverse chi-square CDF: the x with chi2_cdf(x, k) = p, found by a
/// bisection-safeguarded Newton iteration to ~1e-12 relative (spec floor
/// 1e-10). Throws ValidationError for p outside (0,1) or k = 0 and
/// NumericalError if the iteration fails to converge.
[[nodiscard]] double chi2_quantile(double p, std::size_t k);

}  // namespace vlcn
