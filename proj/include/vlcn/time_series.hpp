#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vlcn {

/// Uniformly sampled real-valued capture. Sample i corresponds to time
/// i / sample_rate_hz. Immutable after construction; safe to share across
/// threads. Construction rejects empty data, non-positive sample rates and
/// non-finite samples, so downstream analyses can assume a clean series.
class TimeSeries {
public:
    TimeSeries(std::vector<double> samples, double sample_rate_hz, std::string label = {});

    [[nodiscard]] const std::vector<double>& samples() const noexcept { return samples_; }
    [[nodiscard]] std::span<const double> view() const noexcept { return samples_; }
    [[nodiscard]] double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return samples_[i]; }

    /// Duration covered by one sample, in seconds.
    [[nodiscard]] double sample_period_s() const noexcept { return 1.0 / sample_rate_hz_; }

private:
    std::vector<double> samples_;
    double sample_rate_hz_;
    std::string label_;
};

}  // namespace vlcn
