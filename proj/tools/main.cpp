// vlcn: analyze optical-channel noise captures, synthesize colored noise,
// build OOK datasets, and train/evaluate the convolutional denoiser.
//
// Subcommands: analyze {ljung-box|avar|coeffs}, synth, dataset, train,
// denoise, eval, rerun. Every run writes a manifest JSON next to its outputs;
// `vlcn rerun <manifest>` re-executes the recorded invocation bit-exactly.
//
// Exit codes: 0 success, 1 usage, 2 data/validation, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vlcn/allan.hpp"
#include "vlcn/cae/model_io.hpp"
#include "vlcn/cae/train.hpp"
#include "vlcn/capture_io.hpp"
#include "vlcn/dataset.hpp"
#include "vlcn/error.hpp"
#include "vlcn/noise.hpp"
#include "vlcn/signal.hpp"
#include "vlcn/stats.hpp"
#include "vlcn/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cli(const std::vector<std::string>& args);  // forward, for rerun

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::string output_dir = ".";
    std::string format = "csv";

    [[nodiscard]] vlcn::CaptureFormat capture_format() const {
        return vlcn::parse_capture_format(format);
    }
    [[nodiscard]] const char* ext() const { return format == "csv" ? "csv" : "json"; }
};

void write_manifest(const GlobalOpts& g, const std::string& command,
                    const std::vector<std::string>& argv, const json& params,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
    json m;
    m["tool"] = "vlcn";
    m["version"] = vlcn::kToolVersion;
    m["command"] = command;
    m["argv"] = argv;
    m["parameters"] = params;
    m["inputs"] = inputs;
    m["outputs"] = outputs;
    m["seed"] = g.seed;
    const fs::path path = fs::path(g.output_dir) / (command + ".manifest.json");
    std::ofstream out(path);
    if (!out) {
        throw vlcn::ParseError("cannot write manifest: " + path.string());
    }
    out << m.dump(2) << '\n';
    std::cout << "wrote " << path.string() << '\n';
}

vlcn::TimeSeries load_input(const std::string& path) {
    return vlcn::load_capture(path, vlcn::capture_format_from_path(path));
}

std::vector<vlcn::NoiseComponent> parse_components(double alpha, double sigma,
                                                   const std::vector<std::string>& specs) {
    std::vector<vlcn::NoiseComponent> components;
    for (const auto& spec : specs) {
        vlcn::NoiseComponent c;
        char trailing = 0;
        const int got =
            std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &c.alpha, &c.sigma, &c.weight, &trailing);
        if (got == 2) {
            c.weight = 1.0;
        } else if (got != 3) {
            throw vlcn::ValidationError("bad --component '" + spec +
                                        "' (expected alpha:sigma[:weight])");
        }
        components.push_back(c);
    }
    if (components.empty()) {
        components.push_back({alpha, sigma, 1.0});
    }
    return components;
}

std::string reject_str(bool r) { return r ? "1" : "0"; }

// ---- analyze ---------------------------------------------------------------

int cmd_analyze_ljung_box(const GlobalOpts& g, const std::vector<std::string>& argv,
                          const std::string& input, std::size_t max_lag, double alpha,
                          bool demean) {
    const vlcn::TimeSeries ts = load_input(input);
    vlcn::LjungBoxOptions opts;
    opts.alpha = alpha;
    opts.demean = demean;
    const vlcn::LjungBoxResult res = vlcn::ljung_box(ts, max_lag, opts);

    fs::create_directories(g.output_dir);
    const fs::path csv_path = fs::path(g.output_dir) / "ljung_box.csv";
    {
        std::ofstream out(csv_path);
        out << "lag,q_stat,threshold,reject\n";
        for (std::size_t m = 0; m < res.q_stats.size(); ++m) {
            out << (m + 1) << ',' << vlcn::format_double(res.q_stats[m]) << ','
                << vlcn::format_double(res.thresholds[m]) << ',' << reject_str(res.reject[m])
                << '\n';
        }
    }
    std::cout << "wrote " << csv_path.string() << '\n';

    std::size_t n_rejected = 0;
    for (bool r : res.reject) n_rejected += r ? 1 : 0;
    const fs::path sum_path = fs::path(g.output_dir) / "ljung_box.summary.json";
    {
        json s;
        s["n_samples"] = res.n_samples;
        s["max_lag"] = max_lag;
        s["alpha"] = alpha;
        s["demean"] = demean;
        s["n_rejected"] = n_rejected;
        s["all_rejected"] = n_rejected == res.q_stats.size();
        std::ofstream out(sum_path);
        out << s.dump(2) << '\n';
    }
    std::cout << "wrote " << sum_path.string() << '\n';

    write_manifest(g, "analyze-ljung-box", argv,
                   {{"input", input},
                    {"max_lag", max_lag},
                    {"alpha", alpha},
                    {"demean", demean}},
                   {input}, {csv_path.string(), sum_path.string()});
    return 0;
}

int cmd_analyze_avar(const GlobalOpts& g, const std::vector<std::string>& argv,
                     const std::string& input, std::size_t points_per_decade) {
    const vlcn::TimeSeries ts = load_input(input);
    const auto grid = vlcn::default_cluster_grid(ts.size(), points_per_decade);
    const vlcn::AvarCurve curve = vlcn::allan_variance(ts, grid);

    fs::create_directories(g.output_dir);
    const fs::path csv_path = fs::path(g.output_dir) / "avar.csv";
    {
        std::ofstream out(csv_path);
        out << "tau_s,avar,adev\n";
        for (std::size_t i = 0; i < curve.taus.size(); ++i) {
            out << vlcn::format_double(curve.taus[i]) << ','
                << vlcn::format_double(curve.avar[i]) << ','
                << vlcn::format_double(curve.adev[i]) << '\n';
        }
    }
    std::cout << "wrote " << csv_path.string() << '\n';

    const fs::path sum_path = fs::path(g.output_dir) / "avar.summary.json";
    {
        json s;
        s["n_samples"] = curve.n_samples;
        s["sample_rate_hz"] = curve.sample_rate_hz;
        s["points"] = curve.taus.size();
        s["tau_min_s"] = curve.taus.front();
        s["tau_max_s"] = curve.taus.back();
        std::ofstream out(sum_path);
        out << s.dump(2) << '\n';
    }
    std::cout << "wrote " << sum_path.string() << '\n';

    write_manifest(g, "analyze-avar", argv,
                   {{"input", input}, {"points_per_decade", points_per_decade}}, {input},
                   {csv_path.string(), sum_path.string()});
    return 0;
}

json fit_to_json(const vlcn::SlopeFit& fit) {
    return {{"slope", fit.slope},
            {"intercept", fit.intercept},
            {"tau_lo_s", fit.tau_lo},
            {"tau_hi_s", fit.tau_hi},
            {"residual", fit.residual}};
}

int cmd_analyze_coeffs(const GlobalOpts& g, const std::vector<std::string>& argv,
                       const std::string& input, std::size_t points_per_decade,
                       double slope_tolerance) {
    const vlcn::TimeSeries ts = load_input(input);
    const auto grid = vlcn::default_cluster_grid(ts.size(), points_per_decade);
    const vlcn::AvarCurve curve = vlcn::allan_variance(ts, grid);
    vlcn::ExtractOptions opts;
    opts.slope_tolerance = slope_tolerance;
    const vlcn::NoiseCoefficients coeffs = vlcn::extract_coefficients(curve, opts);

    fs::create_directories(g.output_dir);
    const fs::path out_path = fs::path(g.output_dir) / "coeffs.json";
    {
        json doc;
        if (coeffs.white_n) doc["white_n"] = *coeffs.white_n;
        if (coeffs.flicker_b) doc["flicker_b"] = *coeffs.flicker_b;
        if (coeffs.random_walk_k) doc["random_walk_k"] = *coeffs.random_walk_k;
        doc["fit_report"] = json::object();
        if (coeffs.white_fit) doc["fit_report"]["white"] = fit_to_json(*coeffs.white_fit);
        if (coeffs.flicker_fit) doc["fit_report"]["flicker"] = fit_to_json(*coeffs.flicker_fit);
        if (coeffs.random_walk_fit) {
            doc["fit_report"]["random_walk"] = fit_to_json(*coeffs.random_walk_fit);
        }
        doc["slope_tolerance"] = slope_tolerance;
        doc["n_samples"] = curve.n_samples;
        std::ofstream out(out_path);
        out << doc.dump(2) << '\n';
    }
    std::cout << "wrote " << out_path.string() << '\n';

    write_manifest(g, "analyze-coeffs", argv,
                   {{"input", input},
                    {"points_per_decade", points_per_decade},
                    {"slope_tolerance", slope_tolerance}},
                   {input}, {out_path.string()});
    return 0;
}

// ---- synth -----------------------------------------------------------------

int cmd_synth(const GlobalOpts& g, const std::vector<std::string>& argv, double alpha,
              double sigma, std::size_t length, double mean, double sample_rate,
              std::size_t discard_prefix, const std::vector<std::string>& component_specs,
              std::string output_name) {
    vlcn::NoiseRecipe recipe;
    recipe.components = parse_components(alpha, sigma, component_specs);
    recipe.length = length;
    recipe.seed = g.seed;
    recipe.mean = mean;
    recipe.discard_prefix = discard_prefix;
    const vlcn::TimeSeries noise = vlcn::synthesize(recipe, sample_rate);

    fs::create_directories(g.output_dir);
    if (output_name.empty()) output_name = std::string("noise.") + g.ext();
    const fs::path out_path = fs::path(g.output_dir) / output_name;
    vlcn::save_capture(noise, out_path, g.capture_format());
    std::cout << "wrote " << out_path.string() << '\n';

    json comp_json = json::array();
    for (const auto& c : recipe.components) {
        comp_json.push_back({{"alpha", c.alpha}, {"sigma", c.sigma}, {"weight", c.weight}});
    }
    write_manifest(g, "synth", argv,
                   {{"components", comp_json},
                    {"length", length},
                    {"mean", mean},
                    {"sample_rate_hz", sample_rate},
                    {"discard_prefix", discard_prefix}},
                   {}, {out_path.string()});
    return 0;
}

// ---- dataset ---------------------------------------------------------------

int cmd_dataset(const GlobalOpts& g, const std::vector<std::string>& argv, std::size_t count,
                std::size_t input_length, double on_ms, double off_ms, double amp_on,
                double amp_off, double sample_rate, double responsivity, double dc_offset,
                double mean, const std::vector<std::string>& component_specs,
                const std::string& label, const std::string& dir_name) {
    vlcn::DatasetBuildConfig cfg;
    cfg.ook.on_duration_s = on_ms * 1e-3;
    cfg.ook.off_duration_s = off_ms * 1e-3;
    cfg.ook.amplitude_on = amp_on;
    cfg.ook.amplitude_off = amp_off;
    cfg.sample_rate_hz = sample_rate;
    cfg.record_length = input_length;
    cfg.channel.responsivity = responsivity;
    cfg.channel.dc_offset = dc_offset;
    cfg.noise.components = parse_components(0.0, 1.0, component_specs);
    cfg.noise.mean = mean;
    cfg.count = count;
    cfg.seed = g.seed;
    cfg.label = label;

    const auto pairs = vlcn::build_ook_dataset(cfg);
    const fs::path dir = fs::path(g.output_dir) / dir_name;
    const fs::path manifest =
        vlcn::save_dataset(pairs, dir, g.capture_format(), sample_rate);
    std::cout << "wrote " << manifest.string() << " (" << pairs.size() << " pairs)\n";

    json comp_json = json::array();
    for (const auto& c : cfg.noise.components) {
        comp_json.push_back({{"alpha", c.alpha}, {"sigma", c.sigma}, {"weight", c.weight}});
    }
    write_manifest(g, "dataset", argv,
                   {{"count", count},
                    {"input_length", input_length},
                    {"on_ms", on_ms},
                    {"off_ms", off_ms},
                    {"amplitude_on", amp_on},
                    {"amplitude_off", amp_off},
                    {"sample_rate_hz", sample_rate},
                    {"responsivity", responsivity},
                    {"dc_offset", dc_offset},
                    {"noise_mean", mean},
                    {"components", comp_json},
                    {"label", label}},
                   {}, {manifest.string()});
    return 0;
}

// ---- train / denoise / eval --------------------------------------------------

std::vector<std::size_t> parse_filters(const std::string& spec) {
    std::vector<std::size_t> filters;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            filters.push_back(std::stoul(tok));
        } catch (const std::exception&) {
            throw vlcn::ValidationError("bad --filters '" + spec + "'");
        }
    }
    if (filters.empty()) {
        throw vlcn::ValidationError("--filters needs at least one entry");
    }
    return filters;
}

int cmd_train(const GlobalOpts& g, const std::vector<std::string>& argv,
              const std::string& dataset_path, const std::string& filters_spec,
              std::size_t kernel, std::size_t stride, std::size_t epochs,
              std::size_t batch_size, double lr, double max_norm, double holdout) {
    const auto pairs = vlcn::load_dataset(dataset_path);

    vlcn::cae::CaeArchitecture arch;
    arch.input_length = pairs.front().noisy.size();
    arch.encoder.clear();
    for (std::size_t f : parse_filters(filters_spec)) {
        arch.encoder.push_back({f, kernel, stride});
    }

    vlcn::cae::TrainConfig tc;
    tc.epochs = epochs;
    tc.batch_size = batch_size;
    tc.adam.lr = lr;
    tc.seed = g.seed + 1;  // weight-init streams use g.seed + layer index
    tc.max_norm = max_norm > 0.0 ? std::optional<double>(max_norm) : std::nullopt;
    tc.holdout_fraction = holdout;

    vlcn::cae::CaeModel model(arch, g.seed);
    const vlcn::cae::TrainHistory hist = vlcn::cae::train(model, pairs, tc);

    fs::create_directories(g.output_dir);
    const fs::path model_path = fs::path(g.output_dir) / "model.bin";
    vlcn::cae::save_model(model, model_path);
    std::cout << "wrote " << model_path.string() << '\n';

    const fs::path loss_path = fs::path(g.output_dir) / "loss_history.csv";
    {
        std::ofstream out(loss_path);
        out << "epoch,train_loss,holdout_loss\n";
        for (std::size_t e = 0; e < hist.train_loss.size(); ++e) {
            out << (e + 1) << ',' << vlcn::format_double(hist.train_loss[e]) << ','
                << vlcn::format_double(hist.holdout_loss[e]) << '\n';
        }
    }
    std::cout << "wrote " << loss_path.string() << '\n';

    write_manifest(g, "train", argv,
                   {{"dataset", dataset_path},
                    {"filters", filters_spec},
                    {"kernel", kernel},
                    {"stride", stride},
                    {"epochs", epochs},
                    {"batch_size", batch_size},
                    {"lr", lr},
                    {"max_norm", max_norm},
                    {"holdout", holdout},
                    {"input_length", arch.input_length}},
                   {dataset_path}, {model_path.string(), loss_path.string()});
    return 0;
}

int cmd_denoise(const GlobalOpts& g, const std::vector<std::string>& argv,
                const std::string& model_path, const std::string& input,
                std::string output_name, bool normalize) {
    const vlcn::cae::CaeModel model = vlcn::cae::load_model(model_path);
    vlcn::TimeSeries ts = load_input(input);
    if (ts.size() != model.architecture().input_length) {
        throw vlcn::ValidationError(
            "capture length " + std::to_string(ts.size()) + " does not match model input_length " +
            std::to_string(model.architecture().input_length));
    }
    if (normalize) {
        ts = vlcn::normalize_unit(ts);
    }
    for (double v : ts.samples()) {
        if (v < 0.0 || v > 1.0) {
            throw vlcn::ValidationError(
                "input capture is not normalized to [0,1]; pass --normalize");
        }
    }
    const std::vector<double> denoised = model.run(ts.view());

    fs::create_directories(g.output_dir);
    if (output_name.empty()) output_name = std::string("denoised.") + g.ext();
    const fs::path out_path = fs::path(g.output_dir) / output_name;
    vlcn::save_capture(vlcn::TimeSeries(denoised, ts.sample_rate_hz(), ts.label()), out_path,
                       g.capture_format());
    std::cout << "wrote " << out_path.string() << '\n';

    write_manifest(g, "denoise", argv,
                   {{"model", model_path}, {"input", input}, {"normalize", normalize}},
                   {model_path, input}, {out_path.string()});
    return 0;
}

int cmd_eval(const GlobalOpts& g, const std::vector<std::string>& argv,
             const std::string& dataset_path, const std::string& model_path,
             const std::string& denoised_dir) {
    const auto pairs = vlcn::load_dataset(dataset_path);
    if (model_path.empty() == denoised_dir.empty()) {
        throw vlcn::ValidationError("eval needs exactly one of --model or --denoised");
    }

    std::optional<vlcn::cae::CaeModel> model;
    if (!model_path.empty()) {
        model.emplace(vlcn::cae::load_model(model_path));
        if (model->architecture().input_length != pairs.front().noisy.size()) {
            throw vlcn::ValidationError("model input_length does not match dataset records");
        }
    }

    struct LabelStats {
        std::size_t n = 0;
        double sq_noisy = 0.0;
        double sq_denoised = 0.0;
        std::size_t samples = 0;
    };
    std::vector<std::pair<std::string, LabelStats>> by_label;
    auto stats_for = [&](const std::string& label) -> LabelStats& {
        for (auto& [name, stats] : by_label) {
            if (name == label) return stats;
        }
        by_label.emplace_back(label, LabelStats{});
        return by_label.back().second;
    };

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::vector<double> denoised;
        if (model) {
            denoised = model->run(pairs[i].noisy);
        } else {
            char stem[32];
            std::snprintf(stem, sizeof(stem), "pair%05zu", i);
            const fs::path p =
                fs::path(denoised_dir) / (std::string(stem) + "_denoised." + g.ext());
            denoised = load_input(p.string()).samples();
            if (denoised.size() != pairs[i].clean.size()) {
                throw vlcn::ValidationError("denoised capture " + p.string() +
                                            " length mismatch");
            }
        }
        LabelStats& stats = stats_for(pairs[i].label);
        stats.n += 1;
        stats.samples += pairs[i].clean.size();
        for (std::size_t j = 0; j < pairs[i].clean.size(); ++j) {
            const double dn = pairs[i].noisy[j] - pairs[i].clean[j];
            const double dd = denoised[j] - pairs[i].clean[j];
            stats.sq_noisy += dn * dn;
            stats.sq_denoised += dd * dd;
        }
    }

    fs::create_directories(g.output_dir);
    const fs::path out_path = fs::path(g.output_dir) / "rmse_report.csv";
    {
        std::ofstream out(out_path);
        out << "label,pairs,rmse_noisy,rmse_denoised\n";
        for (const auto& [label, stats] : by_label) {
            const double rn = std::sqrt(stats.sq_noisy / static_cast<double>(stats.samples));
            const double rd = std::sqrt(stats.sq_denoised / static_cast<double>(stats.samples));
            out << label << ',' << stats.n << ',' << vlcn::format_double(rn) << ','
                << vlcn::format_double(rd) << '\n';
            std::cout << label << ": rmse_noisy=" << rn << " rmse_denoised=" << rd << '\n';
        }
    }
    std::cout << "wrote " << out_path.string() << '\n';

    write_manifest(g, "eval", argv,
                   {{"dataset", dataset_path},
                    {"model", model_path},
                    {"denoised", denoised_dir}},
                   {dataset_path}, {out_path.string()});
    return 0;
}

// ---- rerun -----------------------------------------------------------------

int cmd_rerun(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) {
        throw vlcn::ParseError("cannot open manifest: " + manifest_path);
    }
    json m;
    try {
        m = json::parse(in);
    } catch (const json::parse_error& e) {
        throw vlcn::ParseError(std::string("bad manifest: ") + e.what());
    }
    if (!m.contains("argv") || !m["argv"].is_array()) {
        throw vlcn::ParseError(manifest_path + ": manifest has no argv record");
    }
    std::vector<std::string> args;
    for (const auto& a : m["argv"]) args.push_back(a.get<std::string>());
    std::cout << "rerunning: vlcn";
    for (const auto& a : args) std::cout << ' ' << a;
    std::cout << '\n';
    return run_cli(args);
}

// ---- wiring ------------------------------------------------------------------

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"optical channel noise analysis, synthesis and denoising"};
    app.require_subcommand(1);
    app.fallthrough();  // inherited: global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--seed", g.seed, "root seed for all randomness")->capture_default_str();
    app.add_option("--output-dir", g.output_dir, "directory for outputs")
        ->capture_default_str();
    app.add_option("--format", g.format, "capture output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "run a statistic over a capture file");
    analyze->require_subcommand(1);

    std::string lb_input;
    std::size_t lb_max_lag = 100;
    double lb_alpha = 0.05;
    bool lb_no_demean = false;
    auto* lb = analyze->add_subcommand("ljung-box", "autocorrelation whiteness test");
    lb->add_option("input", lb_input, "capture file")->required();
    lb->add_option("--max-lag", lb_max_lag, "largest lag")->capture_default_str();
    lb->add_option("--alpha", lb_alpha, "significance level")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9))
        ->capture_default_str();
    lb->add_flag("--no-demean", lb_no_demean, "skip mean removal before the test");

    std::string avar_input;
    std::size_t avar_ppd = 10;
    auto* avar = analyze->add_subcommand("avar", "overlapping Allan variance curve");
    avar->add_option("input", avar_input, "capture file")->required();
    avar->add_option("--points-per-decade", avar_ppd, "cluster grid density")
        ->capture_default_str();

    std::string coeffs_input;
    std::size_t coeffs_ppd = 10;
    double coeffs_tol = 0.15;
    auto* coeffs = analyze->add_subcommand("coeffs", "noise-component coefficients");
    coeffs->add_option("input", coeffs_input, "capture file")->required();
    coeffs->add_option("--points-per-decade", coeffs_ppd, "cluster grid density")
        ->capture_default_str();
    coeffs->add_option("--slope-tolerance", coeffs_tol, "slope classification band")
        ->capture_default_str();

    // synth
    double sy_alpha = 0.0, sy_sigma = 1.0, sy_mean = 0.0, sy_rate = 1.0;
    std::size_t sy_length = 0, sy_discard = 0;
    std::vector<std::string> sy_components;
    std::string sy_output;
    auto* synth = app.add_subcommand("synth", "synthesize 1/f^alpha noise");
    synth->add_option("--alpha", sy_alpha, "power-law exponent")
        ->check(CLI::Range(0.0, 2.0))
        ->capture_default_str();
    synth->add_option("--sigma", sy_sigma, "driving white-noise std")->capture_default_str();
    synth->add_option("--length", sy_length, "samples to generate")->required();
    synth->add_option("--mean", sy_mean, "dc offset")->capture_default_str();
    synth->add_option("--sample-rate", sy_rate, "sample rate written to the capture")
        ->capture_default_str();
    synth->add_option("--discard-prefix", sy_discard, "drop this many leading samples")
        ->capture_default_str();
    synth->add_option("--component", sy_components,
                      "alpha:sigma[:weight], repeatable for composite noise");
    synth->add_option("--output", sy_output, "output file name");

    // dataset
    std::size_t ds_count = 0, ds_len = 256;
    double ds_on = 1.0, ds_off = 4.0, ds_amp_on = 1.0, ds_amp_off = 0.0;
    double ds_rate = 51250.0, ds_resp = 1.0, ds_dc = 0.0, ds_mean = 0.0;
    std::vector<std::string> ds_components;
    std::string ds_label = "synthetic", ds_dir = "dataset";
    auto* dataset = app.add_subcommand("dataset", "build a noisy/clean OOK pulse dataset");
    dataset->add_option("--count", ds_count, "number of pairs")
        ->required()
        ->check(CLI::PositiveNumber);
    dataset->add_option("--input-length", ds_len, "record length in samples")
        ->capture_default_str();
    dataset->add_option("--on-ms", ds_on, "pulse ON duration, ms")->capture_default_str();
    dataset->add_option("--off-ms", ds_off, "pulse OFF duration, ms")->capture_default_str();
    dataset->add_option("--amp-on", ds_amp_on, "ON amplitude")->capture_default_str();
    dataset->add_option("--amp-off", ds_amp_off, "OFF amplitude")->capture_default_str();
    dataset->add_option("--sample-rate", ds_rate, "sample rate, Hz")->capture_default_str();
    dataset->add_option("--responsivity", ds_resp, "photodiode responsivity")
        ->capture_default_str();
    dataset->add_option("--dc-offset", ds_dc, "channel dc offset")->capture_default_str();
    dataset->add_option("--noise-mean", ds_mean, "noise dc offset")->capture_default_str();
    dataset->add_option("--component", ds_components,
                        "alpha:sigma[:weight], repeatable for composite noise");
    dataset->add_option("--label", ds_label, "scenario label")->capture_default_str();
    dataset->add_option("--dir-name", ds_dir, "dataset directory name")->capture_default_str();

    // train
    std::string tr_dataset, tr_filters = "128,32";
    std::size_t tr_kernel = 3, tr_stride = 2, tr_epochs = 100, tr_batch = 50;
    double tr_lr = 1e-3, tr_max_norm = 4.0, tr_holdout = 0.30;
    auto* train_cmd = app.add_subcommand("train", "train the denoising autoencoder");
    train_cmd->add_option("--dataset", tr_dataset, "dataset manifest.json")->required();
    train_cmd->add_option("--filters", tr_filters, "encoder filter counts, comma separated")
        ->capture_default_str();
    train_cmd->add_option("--kernel", tr_kernel, "kernel size")->capture_default_str();
    train_cmd->add_option("--stride", tr_stride, "encoder stride")->capture_default_str();
    train_cmd->add_option("--epochs", tr_epochs, "training epochs")->capture_default_str();
    train_cmd->add_option("--batch-size", tr_batch, "mini-batch size")->capture_default_str();
    train_cmd->add_option("--lr", tr_lr, "adam learning rate")->capture_default_str();
    train_cmd->add_option("--max-norm", tr_max_norm,
                          "first-layer filter norm bound; 0 disables")
        ->capture_default_str();
    train_cmd->add_option("--holdout", tr_holdout, "held-out fraction")->capture_default_str();

    // denoise
    std::string dn_model, dn_input, dn_output;
    bool dn_normalize = false;
    auto* denoise = app.add_subcommand("denoise", "run a capture through a trained model");
    denoise->add_option("--model", dn_model, "model file")->required();
    denoise->add_option("--input", dn_input, "capture file")->required();
    denoise->add_option("--output", dn_output, "output file name");
    denoise->add_flag("--normalize", dn_normalize, "unit-normalize the capture first");

    // eval
    std::string ev_dataset, ev_model, ev_denoised;
    auto* eval_cmd = app.add_subcommand("eval", "per-label RMSE report over a dataset");
    eval_cmd->add_option("--dataset", ev_dataset, "dataset manifest.json")->required();
    eval_cmd->add_option("--model", ev_model, "model file to run");
    eval_cmd->add_option("--denoised", ev_denoised,
                         "directory of pairNNNNN_denoised captures to score instead");

    // rerun
    std::string rr_manifest;
    auto* rerun = app.add_subcommand("rerun", "re-execute a recorded run manifest");
    rerun->add_option("manifest", rr_manifest, "run manifest JSON")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (lb->parsed()) {
        return cmd_analyze_ljung_box(g, args, lb_input, lb_max_lag, lb_alpha, !lb_no_demean);
    }
    if (avar->parsed()) {
        return cmd_analyze_avar(g, args, avar_input, avar_ppd);
    }
    if (coeffs->parsed()) {
        return cmd_analyze_coeffs(g, args, coeffs_input, coeffs_ppd, coeffs_tol);
    }
    if (synth->parsed()) {
        return cmd_synth(g, args, sy_alpha, sy_sigma, sy_length, sy_mean, sy_rate, sy_discard,
                         sy_components, sy_output);
    }
    if (dataset->parsed()) {
        return cmd_dataset(g, args, ds_count, ds_len, ds_on, ds_off, ds_amp_on, ds_amp_off,
                           ds_rate, ds_resp, ds_dc, ds_mean, ds_components, ds_label, ds_dir);
    }
    if (train_cmd->parsed()) {
        return cmd_train(g, args, tr_dataset, tr_filters, tr_kernel, tr_stride, tr_epochs,
                         tr_batch, tr_lr, tr_max_norm, tr_holdout);
    }
    if (denoise->parsed()) {
        return cmd_denoise(g, args, dn_model, dn_input, dn_output, dn_normalize);
    }
    if (eval_cmd->parsed()) {
        return cmd_eval(g, args, ev_dataset, ev_model, ev_denoised);
    }
    if (rerun->parsed()) {
        return cmd_rerun(rr_manifest);
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run_cli(args);
    } catch (const vlcn::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const vlcn::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const vlcn::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
