#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vlcn/capture_io.hpp"
#include "vlcn/noise.hpp"
#include "vlcn/signal.hpp"

namespace vlcn {

/// One training example: a noisy capture and its clean counterpart, equal
/// length, both normalized to [0,1].
struct SignalPair {
    std::vector<double> noisy;
    std::vector<double> clean;
    std::string label;
};

/// Recipe for a synthetic noisy/clean OOK dataset: the transmit pattern, the
/// channel it passes through, and the noise process corrupting it. Pair i
/// draws its noise from seed + i * components.size(), so every pair gets
/// disjoint component streams.
struct DatasetBuildConfig {
    OokPattern ook;
    double sample_rate_hz = 51250.0;  // 1 ms / 4 ms pattern -> ~256-sample period
    std::size_t record_length = 256;
    ChannelParams channel;
    NoiseRecipe noise;  ///< noise.length is overridden with record_length
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::string label = "synthetic";
};

/// Build `count` pairs: a fixed OOK waveform truncated to record_length, each
/// pair corrupted by an independently seeded noise realization through the
/// channel, then unit-normalized (clean signals are generated in [0,1]).
[[nodiscard]] std::vector<SignalPair> build_ook_dataset(const DatasetBuildConfig& cfg);

/// Write pairs as capture files next to a manifest.json listing them with
/// their scenario labels. Returns the manifest path.
std::filesystem::path save_dataset(const std::vector<SignalPair>& pairs,
                                   const std::filesystem::path& dir, CaptureFormat format,
                                   double sample_rate_hz);

/// Load a dataset directory from its manifest. Validates pairing and lengths.
[[nodiscard]] std::vector<SignalPair> load_dataset(const std::filesystem::path& manifest_path);

}  // namespace vlcn
