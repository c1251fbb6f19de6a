#include "vlcn/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "vlcn/error.hpp"

namespace vlcn {

std::vector<SignalPair> build_ook_dataset(const DatasetBuildConfig& cfg) {
    if (cfg.count == 0) {
        throw ValidationError("build_ook_dataset: count must be >= 1");
    }
    if (cfg.record_length == 0) {
        throw ValidationError("build_ook_dataset: record_length must be >= 1");
    }
    if (cfg.noise.components.empty()) {
        throw ValidationError("build_ook_dataset: noise recipe needs components");
    }

    // One pulse period, repeated until the record is covered, then truncated.
    OokPattern pattern = cfg.ook;
    pattern.n_pulses = 1;
    const TimeSeries period = generate_ook(pattern, cfg.sample_rate_hz);
    pattern.n_pulses = cfg.record_length / period.size() + 1;
    const TimeSeries pulses = generate_ook(pattern, cfg.sample_rate_hz);
    std::vector<double> clean(pulses.samples().begin(),
                              pulses.samples().begin() + cfg.record_length);
    const TimeSeries clean_ts(clean, cfg.sample_rate_hz);

    std::vector<SignalPair> out;
    out.reserve(cfg.count);
    const std::uint64_t stride = cfg.noise.components.size();
    for (std::size_t i = 0; i < cfg.count; ++i) {
        NoiseRecipe recipe = cfg.noise;
        recipe.length = cfg.record_length;
        recipe.seed = cfg.seed + static_cast<std::uint64_t>(i) * stride;
        const TimeSeries noise = synthesize(recipe, cfg.sample_rate_hz);
        const TimeSeries noisy = normalize_unit(apply_channel(clean_ts, cfg.channel, noise));
        SignalPair pair;
        pair.noisy = noisy.samples();
        pair.clean = clean;
        pair.label = cfg.label;
        out.push_back(std::move(pair));
    }
    return out;
}

std::filesystem::path save_dataset(const std::vector<SignalPair>& pairs,
                                   const std::filesystem::path& dir, CaptureFormat format,
                                   double sample_rate_hz) {
    if (pairs.empty()) {
        throw ValidationError("save_dataset: no pairs");
    }
    std::filesystem::create_directories(dir);
    const char* ext = format == CaptureFormat::csv ? "csv" : "json";

    nlohmann::json manifest;
    manifest["version"] = 1;
    manifest["format"] = ext;
    manifest["pairs"] = nlohmann::json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        char stem[32];
        std::snprintf(stem, sizeof(stem), "pair%05zu", i);
        const std::string noisy_name = std::string(stem) + "_noisy." + ext;
        const std::string clean_name = std::string(stem) + "_clean." + ext;
        save_capture(TimeSeries(pairs[i].noisy, sample_rate_hz, pairs[i].label),
                     dir / noisy_name, format);
        save_capture(TimeSeries(pairs[i].clean, sample_rate_hz, pairs[i].label),
                     dir / clean_name, format);
        manifest["pairs"].push_back(
            {{"noisy", noisy_name}, {"clean", clean_name}, {"label", pairs[i].label}});
    }

    const auto manifest_path = dir / "manifest.json";
    std::ofstream out(manifest_path);
    if (!out) {
        throw ParseError("cannot write dataset manifest: " + manifest_path.string());
    }
    out << manifest.dump(2) << '\n';
    return manifest_path;
}

std::vector<SignalPair> load_dataset(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) {
        throw ParseError("cannot open dataset manifest: " + manifest_path.string());
    }
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(manifest_path.string() + ": " + e.what());
    }
    if (!manifest.contains("pairs") || !manifest["pairs"].is_array() ||
        manifest["pairs"].empty()) {
        throw ParseError(manifest_path.string() + ": manifest has no pairs");
    }
    const CaptureFormat format =
        parse_capture_format(manifest.value("format", std::string("csv")));
    const auto dir = manifest_path.parent_path();

    std::vector<SignalPair> out;
    out.reserve(manifest["pairs"].size());
    for (const auto& entry : manifest["pairs"]) {
        if (!entry.contains("noisy") || !entry.contains("clean")) {
            throw ParseError(manifest_path.string() + ": pair entry missing noisy/clean field");
        }
        const TimeSeries noisy =
            load_capture(dir / entry["noisy"].get<std::string>(), format);
        const TimeSeries clean =
            load_capture(dir / entry["clean"].get<std::string>(), format);
        if (noisy.size() != clean.size()) {
            throw ValidationError(manifest_path.string() + ": pair length mismatch for " +
                                  entry["noisy"].get<std::string>());
        }
        SignalPair pair;
        pair.noisy = noisy.samples();
        pair.clean = clean.samples();
        pair.label = entry.value("label", std::string());
        out.push_back(std::move(pair));
    }
    return out;
}

}  // namespace vlcn
