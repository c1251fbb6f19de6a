#include "vlcn/time_series.hpp"

#include <cmath>

#include "vlcn/error.hpp"

namespace vlcn {

TimeSeries::TimeSeries(std::vector<double> samples, double sample_rate_hz, std::string label)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz), label_(std::move(label)) {
    if (samples_.empty()) {
        throw ValidationError("TimeSeries: no samples");
    }
    if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
        throw ValidationError("TimeSeries: sample_rate_hz must be positive and finite");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(samples_[i])) {
            throw ValidationError("TimeSeries: non-finite sample at index " + std::to_string(i));
        }
    }
}

}  // namespace vlcn
