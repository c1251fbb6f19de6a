#include "vlcn/capture_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "vlcn/error.hpp"

namespace vlcn {

namespace {

// Strict full-string float parse. std::from_chars for doubles is missing on
// some libstdc++ builds, so use strtod with end-pointer checking.
bool parse_double(const std::string& text, double& out) {
    if (text.empty()) return false;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE) return false;
    out = v;
    return true;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

TimeSeries load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open capture file: " + path.string());
    }

    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) {
        throw ParseError(path.string() + ": empty file, missing sample_rate_hz header");
    }
    ++line_no;
    line = strip_cr(line);
    const std::string rate_key = "sample_rate_hz=";
    if (line.rfind(rate_key, 0) != 0) {
        throw ParseError(path.string() + ":1: missing sample_rate_hz header (got '" + line + "')");
    }
    double rate = 0.0;
    if (!parse_double(line.substr(rate_key.size()), rate)) {
        throw ParseError(path.string() + ":1: cannot parse sample_rate_hz value '" +
                         line.substr(rate_key.size()) + "'");
    }

    std::string label;
    std::vector<double> samples;
    std::size_t row = 0;  // 1-based data row index, for error messages
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (row == 0 && samples.empty() && line.rfind("label=", 0) == 0) {
            label = line.substr(6);
            continue;
        }
        ++row;
        double v = 0.0;
        if (!parse_double(line, v)) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": cannot parse sample row " + std::to_string(row) + " ('" + line + "')");
        }
        samples.push_back(v);
    }
    if (samples.empty()) {
        throw ParseError(path.string() + ": no samples");
    }
    return TimeSeries(std::move(samples), rate, std::move(label));
}

TimeSeries load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open capture file: " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError(path.string() + ": top-level JSON value must be an object");
    }
    if (!doc.contains("sample_rate_hz")) {
        throw ParseError(path.string() + ": missing sample_rate_hz field");
    }
    if (!doc["sample_rate_hz"].is_number()) {
        throw ParseError(path.string() + ": sample_rate_hz must be a number");
    }
    if (!doc.contains("samples") || !doc["samples"].is_array()) {
        throw ParseError(path.string() + ": missing samples array");
    }
    std::vector<double> samples;
    samples.reserve(doc["samples"].size());
    std::size_t idx = 0;
    for (const auto& v : doc["samples"]) {
        if (!v.is_number()) {
            throw ParseError(path.string() + ": samples[" + std::to_string(idx) +
                             "] is not a number");
        }
        samples.push_back(v.get<double>());
        ++idx;
    }
    if (samples.empty()) {
        throw ParseError(path.string() + ": no samples");
    }
    std::string label;
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) {
            throw ParseError(path.string() + ": label must be a string");
        }
        label = doc["label"].get<std::string>();
    }
    return TimeSeries(std::move(samples), doc["sample_rate_hz"].get<double>(), std::move(label));
}

void save_csv(const TimeSeries& ts, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot open for writing: " + path.string());
    }
    out << "sample_rate_hz=" << format_double(ts.sample_rate_hz()) << '\n';
    if (!ts.label().empty()) {
        out << "label=" << ts.label() << '\n';
    }
    for (double v : ts.samples()) {
        out << format_double(v) << '\n';
    }
    if (!out) {
        throw ParseError("write failed: " + path.string());
    }
}

// Hand-written so numbers get the same 17-digit formatting as the CSV path.
void save_json(const TimeSeries& ts, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot open for writing: " + path.string());
    }
    out << "{\n  \"sample_rate_hz\": " << format_double(ts.sample_rate_hz());
    if (!ts.label().empty()) {
        out << ",\n  \"label\": " << nlohmann::json(ts.label()).dump();
    }
    out << ",\n  \"samples\": [";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) out << ", ";
        out << format_double(ts[i]);
    }
    out << "]\n}\n";
    if (!out) {
        throw ParseError("write failed: " + path.string());
    }
}

}  // namespace

CaptureFormat parse_capture_format(const std::string& name) {
    if (name == "csv") return CaptureFormat::csv;
    if (name == "json") return CaptureFormat::json;
    throw ValidationError("unknown capture format '" + name + "' (expected csv or json)");
}

CaptureFormat capture_format_from_path(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".csv") return CaptureFormat::csv;
    if (ext == ".json") return CaptureFormat::json;
    throw ValidationError("cannot infer capture format from extension '" + ext + "'");
}

TimeSeries load_capture(const std::filesystem::path& path, CaptureFormat format) {
    return format == CaptureFormat::csv ? load_csv(path) : load_json(path);
}

void save_capture(const TimeSeries& ts, const std::filesystem::path& path, CaptureFormat format) {
    if (format == CaptureFormat::csv) {
        save_csv(ts, path);
    } else {
        save_json(ts, path);
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace vlcn
