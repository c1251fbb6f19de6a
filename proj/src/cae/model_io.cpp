#include "vlcn/cae/model_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include <json.hpp>

#include "vlcn/error.hpp"

namespace vlcn::cae {

namespace {

constexpr char kMagic[8] = {'V', 'L', 'C', 'N', 'C', 'A', 'E', '\n'};
constexpr std::uint32_t kFormatVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

void write_f64(std::ostream& out, double d) {
    write_u64(out, std::bit_cast<std::uint64_t>(d));
}

std::uint32_t read_u32(std::istream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
        throw ParseError(path + ": unexpected end of model file");
    }
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

std::uint64_t read_u64(std::istream& in, const std::string& path) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) {
        throw ParseError(path + ": unexpected end of model file");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

double read_f64(std::istream& in, const std::string& path) {
    return std::bit_cast<double>(read_u64(in, path));
}

}  // namespace

void save_model(const CaeModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot open for writing: " + path.string());
    }
    out.write(kMagic, sizeof(kMagic));
    write_u32(out, kFormatVersion);

    nlohmann::json header;
    header["input_length"] = model.architecture().input_length;
    header["encoder"] = nlohmann::json::array();
    for (const auto& e : model.architecture().encoder) {
        header["encoder"].push_back(
            {{"filters", e.filters}, {"kernel_size", e.kernel_size}, {"stride", e.stride}});
    }
    header["output_kernel_size"] = model.architecture().output_kernel_size;
    header["seed"] = model.init_seed();
    header["epochs"] = model.epochs_seen();
    const std::string header_str = header.dump();
    write_u64(out, header_str.size());
    out.write(header_str.data(), static_cast<std::streamsize>(header_str.size()));

    for (const auto& layer : model.layers()) {
        write_u64(out, layer.weights().size());
        for (double w : layer.weights()) write_f64(out, w);
        write_u64(out, layer.biases().size());
        for (double b : layer.biases()) write_f64(out, b);
    }
    if (!out) {
        throw ParseError("write failed: " + path.string());
    }
}

CaeModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open model file: " + path.string());
    }
    char magic[8];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw ParseError(path.string() + ": not a model file (bad magic)");
    }
    const std::uint32_t version = read_u32(in, path.string());
    if (version != kFormatVersion) {
        throw ParseError(path.string() + ": unsupported model format version " +
                         std::to_string(version));
    }
    const std::uint64_t header_len = read_u64(in, path.string());
    std::string header_str(header_len, '\0');
    if (!in.read(header_str.data(), static_cast<std::streamsize>(header_len))) {
        throw ParseError(path.string() + ": unexpected end of model file");
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(header_str);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": bad model header: " + e.what());
    }

    CaeArchitecture arch;
    arch.input_length = header.at("input_length").get<std::size_t>();
    arch.encoder.clear();
    for (const auto& e : header.at("encoder")) {
        arch.encoder.push_back({e.at("filters").get<std::size_t>(),
                                e.at("kernel_size").get<std::size_t>(),
                                e.at("stride").get<std::size_t>()});
    }
    arch.output_kernel_size = header.at("output_kernel_size").get<std::size_t>();

    CaeModel model(arch, header.at("seed").get<std::uint64_t>());
    model.set_epochs_seen(header.at("epochs").get<std::size_t>());
    for (std::size_t li = 0; li < model.layers().size(); ++li) {
        auto& layer = model.layers()[li];
        const std::uint64_t w_count = read_u64(in, path.string());
        if (w_count != layer.weights().size()) {
            throw ParseError(path.string() + ": layer " + std::to_string(li) +
                             " weight block size mismatch");
        }
        for (auto& w : layer.weights()) w = read_f64(in, path.string());
        const std::uint64_t b_count = read_u64(in, path.string());
        if (b_count != layer.biases().size()) {
            throw ParseError(path.string() + ": layer " + std::to_string(li) +
                             " bias block size mismatch");
        }
        for (auto& b : layer.biases()) b = read_f64(in, path.string());
    }
    return model;
}

}  // namespace vlcn::cae
