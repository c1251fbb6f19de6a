#pragma once

#include <filesystem>
#include <string>

#include "vlcn/time_series.hpp"

namespace vlcn {

enum class CaptureFormat { csv, json };

/// Parse "csv" / "json" (case-sensitive). Throws ValidationError otherwise.
[[nodiscard]] CaptureFormat parse_capture_format(const std::string& name);

/// Pick a format from a file extension (".csv" / ".json"). Throws ValidationError
/// for anything else.
[[nodiscard]] CaptureFormat capture_format_from_path(const std::filesystem::path& path);

/// Load a capture file.
///
/// CSV layout: first line `sample_rate_hz=<float>`, optional second line
/// `label=<text>`, then one sample per line. JSON layout:
/// {"sample_rate_hz": f, "label": s?, "samples": [f...]}.
///
/// Errors carry the offending line / field; a missing sample rate is always an
/// explicit error, never guessed.
[[nodiscard]] TimeSeries load_capture(const std::filesystem::path& path, CaptureFormat format);

/// Write a capture. Floats are serialized with 17 significant digits so that a
/// load after save reproduces every sample bit-exactly.
void save_capture(const TimeSeries& ts, const std::filesystem::path& path, CaptureFormat format);

/// 17-significant-digit representation; round-trips IEEE doubles exactly.
[[nodiscard]] std::string format_double(double v);

}  // namespace vlcn
