#pragma once

#include <cstddef>
#include <vector>

#include "vlcn/time_series.hpp"

namespace vlcn {

/// On-off keying pulse train description. Amplitudes live in [0,1] with
/// amplitude_on > amplitude_off; each pulse is floor(duration * fs) samples.
struct OokPattern {
    double on_duration_s = 1e-3;
    double off_duration_s = 4e-3;
    double amplitude_on = 1.0;
    double amplitude_off = 0.0;
    std::size_t n_pulses = 1;
};

/// Receiver-side channel description: photodiode responsivity (A/W), a
/// discrete impulse response (default [1.0] = identity) and a DC offset.
/// The offset lives here, not in the noise, so analyses can keep or strip
/// it explicitly.
struct ChannelParams {
    double responsivity = 1.0;
    std::vector<double> impulse_response = {1.0};
    double dc_offset = 0.0;
};

/// Affine rescale to [0,1]: (x - min) / (max - min). Throws ValidationError on a
/// constant series (zero dynamic range). Idempotent on anything else.
[[nodiscard]] TimeSeries normalize_unit(const TimeSeries& ts);

/// Piecewise-constant OOK waveform: n_pulses periods of floor(on*fs) samples at
/// amplitude_on followed by floor(off*fs) samples at amplitude_off. Fractional
/// sample remainders are dropped per segment, never accumulated. Throws if a
/// segment would round to zero samples.
[[nodiscard]] TimeSeries generate_ook(const OokPattern& pattern, double sample_rate_hz);

/// Received-signal model: y[i] = R * (x (*) h)[i] + dc_offset + noise[i], using a
/// causal convolution (output sample i sums h[j] * x[i-j], zero-padded history)
/// trimmed to x's length. noise must cover x's length and share its sample rate.
[[nodiscard]] TimeSeries apply_channel(const TimeSeries& x, const ChannelParams& ch,
                                       const TimeSeries& noise);

}  // namespace vlcn
