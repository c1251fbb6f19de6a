#include "vlcn/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vlcn/error.hpp"

namespace vlcn {

TimeSeries normalize_unit(const TimeSeries& ts) {
    const auto [lo_it, hi_it] = std::minmax_element(ts.samples().begin(), ts.samples().end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) {
        throw ValidationError("normalize_unit: constant series has zero dynamic range");
    }
    const double span = hi - lo;
    std::vector<double> out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out[i] = (ts[i] - lo) / span;
    }
    return TimeSeries(std::move(out), ts.sample_rate_hz(), ts.label());
}

TimeSeries generate_ook(const OokPattern& p, double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0)) {
        throw ValidationError("generate_ook: sample_rate_hz must be positive");
    }
    if (!(p.on_duration_s > 0.0) || !(p.off_duration_s > 0.0)) {
        throw ValidationError("generate_ook: durations must be positive");
    }
    if (p.n_pulses == 0) {
        throw ValidationError("generate_ook: n_pulses must be >= 1");
    }
    if (p.amplitude_on < 0.0 || p.amplitude_on > 1.0 || p.amplitude_off < 0.0 ||
        p.amplitude_off > 1.0) {
        throw ValidationError("generate_ook: amplitudes must lie in [0,1]");
    }
    if (!(p.amplitude_on > p.amplitude_off)) {
        throw ValidationError("generate_ook: amplitude_on must exceed amplitude_off");
    }
    const auto on_n = static_cast<std::size_t>(std::floor(p.on_duration_s * sample_rate_hz));
    const auto off_n = static_cast<std::size_t>(std::floor(p.off_duration_s * sample_rate_hz));
    if (on_n == 0 || off_n == 0) {
        throw ValidationError("generate_ook: sub-sample segment duration at fs=" +
                              std::to_string(sample_rate_hz) + " Hz");
    }
    std::vector<double> out;
    out.reserve(p.n_pulses * (on_n + off_n));
    for (std::size_t k = 0; k < p.n_pulses; ++k) {
        out.insert(out.end(), on_n, p.amplitude_on);
        out.insert(out.end(), off_n, p.amplitude_off);
    }
    return TimeSeries(std::move(out), sample_rate_hz);
}

TimeSeries apply_channel(const TimeSeries& x, const ChannelParams& ch, const TimeSeries& noise) {
    if (!(ch.responsivity > 0.0)) {
        throw ValidationError("apply_channel: responsivity must be positive");
    }
    if (ch.impulse_response.empty()) {
        throw ValidationError("apply_channel: impulse response must be non-empty");
    }
    if (x.sample_rate_hz() != noise.sample_rate_hz()) {
        throw ValidationError("apply_channel: sample-rate mismatch between signal and noise");
    }
    if (noise.size() < x.size()) {
        throw ValidationError("apply_channel: noise shorter than signal (" +
                              std::to_string(noise.size()) + " < " + std::to_string(x.size()) + ")");
    }
    const auto& h = ch.impulse_response;
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double acc = 0.0;
        const std::size_t jmax = std::min(h.size() - 1, i);
        for (std::size_t j = 0; j <= jmax; ++j) {
            acc += h[j] * x[i - j];
        }
        out[i] = ch.responsivity * acc + ch.dc_offset + noise[i];
    }
    return TimeSeries(std::move(out), x.sample_rate_hz(), x.label());
}

}  // namespace vlcn
