#pragma once

#include <complex>
#include <span>
#include <vector>

namespace vlcn::detail {

/// In-place iterative radix-2 FFT; size must be a power of two. The inverse
/// transform includes the 1/n scaling.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

/// First out_len samples of the linear convolution h * w via zero-padded FFT.
[[nodiscard]] std::vector<double> convolve_fft(std::span<const double> h,
                                               std::span<const double> w, std::size_t out_len);

/// Same, evaluated directly: out[i] = sum_{j<=i, j<len(h)} h[j] * w[i-j].
[[nodiscard]] std::vector<double> convolve_direct(std::span<const double> h,
                                                  std::span<const double> w, std::size_t out_len);

}  // namespace vlcn::detail
