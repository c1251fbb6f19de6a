#include "vlcn/detail/fft.hpp"

#include <cmath>
#include <numbers>

#include "vlcn/error.hpp"

namespace vlcn::detail {

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw ValidationError("fft_inplace: size must be a power of two");
    }
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= scale;
    }
}

std::vector<double> convolve_fft(std::span<const double> h, std::span<const double> w,
                                 std::size_t out_len) {
    std::size_t nfft = 1;
    while (nfft < h.size() + w.size() - 1) nfft <<= 1;
    std::vector<std::complex<double>> fa(nfft), fb(nfft);
    for (std::size_t i = 0; i < h.size(); ++i) fa[i] = h[i];
    for (std::size_t i = 0; i < w.size(); ++i) fb[i] = w[i];
    fft_inplace(fa, false);
    fft_inplace(fb, false);
    for (std::size_t i = 0; i < nfft; ++i) fa[i] *= fb[i];
    fft_inplace(fa, true);
    std::vector<double> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
    return out;
}

std::vector<double> convolve_direct(std::span<const double> h, std::span<const double> w,
                                    std::size_t out_len) {
    std::vector<double> out(out_len, 0.0);
    for (std::size_t i = 0; i < out_len; ++i) {
        const std::size_t jmax = std::min(i, h.size() - 1);
        double acc = 0.0;
        for (std::size_t j = 0; j <= jmax; ++j) {
            if (i - j < w.size()) acc += h[j] * w[i - j];
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace vlcn::detail
