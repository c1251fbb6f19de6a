// Acceptance suite: one check per shipping criterion, one PASS/FAIL line each.
// Returns nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vlcn/allan.hpp"
#include "vlcn/cae/model_io.hpp"
#include "vlcn/cae/train.hpp"
#include "vlcn/capture_io.hpp"
#include "vlcn/chi2.hpp"
#include "vlcn/dataset.hpp"
#include "vlcn/noise.hpp"
#include "vlcn/signal.hpp"
#include "vlcn/stats.hpp"

namespace fs = std::filesystem;
using namespace vlcn;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

void fail(Outcome& o, const std::string& why) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += why;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

TimeSeries synth_single(double alpha, double sigma, std::size_t length, std::uint64_t seed) {
    NoiseRecipe recipe;
    recipe.components = {{alpha, sigma, 1.0}};
    recipe.length = length;
    recipe.seed = seed;
    return synthesize(recipe);
}

// ---- criterion 1: slope reproduction ----------------------------------------

Outcome slope_reproduction() {
    Outcome o;
    const std::size_t m = 1000000;
    for (double alpha : {0.0, 1.0, 2.0}) {
        const auto start = std::chrono::steady_clock::now();
        const TimeSeries noise = synth_single(alpha, 1.0, m, 20240 + static_cast<int>(alpha));
        const AvarCurve curve = allan_variance(noise, default_cluster_grid(m, 10));
        // central 3 decades of the tau span
        const double lo_exp =
            (std::log10(curve.taus.front()) + std::log10(curve.taus.back()) - 3.0) / 2.0;
        const SlopeFit fit =
            fit_loglog_slope(curve, std::pow(10.0, lo_exp), std::pow(10.0, lo_exp + 3.0));
        const double target = (alpha - 1.0) / 2.0;
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (std::fabs(fit.slope - target) > 0.1) {
            fail(o, "alpha=" + fmt(alpha) + " slope " + fmt(fit.slope) + " vs " + fmt(target));
        }
        if (secs > 60.0) {
            fail(o, "alpha=" + fmt(alpha) + " took " + fmt(secs) + "s (>60s)");
        }
        o.detail += (o.detail.empty() ? "" : ", ") + std::string("a=") + fmt(alpha) + ":" +
                    fmt(fit.slope) + " in " + fmt(secs) + "s";
    }
    return o;
}

// ---- criterion 2: Ljung-Box discrimination ----------------------------------

Outcome ljung_box_discrimination() {
    Outcome o;
    // colored: alpha=2 at 1e6, downsampled by 10
    const TimeSeries walk = synth_single(2.0, 1.0, 1000000, 31);
    std::vector<double> down;
    down.reserve(100000);
    for (std::size_t i = 0; i < walk.size(); i += 10) down.push_back(walk[i]);
    const LjungBoxResult colored = ljung_box(TimeSeries(down, 1.0), 100);
    std::size_t rejected = 0;
    for (bool r : colored.reject) rejected += r ? 1 : 0;
    if (rejected != 100) {
        fail(o, "colored input rejected at only " + std::to_string(rejected) + "/100 lags");
    }

    // null: 1000 seeded white trials at N=2000, per-lag rate within [0.02,0.09]
    const std::size_t trials = 1000, n = 2000, lags = 100;
    std::vector<std::size_t> hits(lags, 0);
    for (std::size_t t = 0; t < trials; ++t) {
        const LjungBoxResult res = ljung_box(gaussian_white(n, 1.0, 50000 + t), lags);
        for (std::size_t k = 0; k < lags; ++k) hits[k] += res.reject[k] ? 1 : 0;
    }
    double rate_lo = 1.0, rate_hi = 0.0;
    for (std::size_t k = 0; k < lags; ++k) {
        const double rate = static_cast<double>(hits[k]) / trials;
        rate_lo = std::min(rate_lo, rate);
        rate_hi = std::max(rate_hi, rate);
    }
    if (rate_lo < 0.02 || rate_hi > 0.09) {
        fail(o, "null per-lag rejection range [" + fmt(rate_lo) + "," + fmt(rate_hi) +
                    "] outside [0.02,0.09]");
    }
    o.detail += (o.detail.empty() ? "" : ", ") + std::string("colored ") +
                std::to_string(rejected) + "/100, null range [" + fmt(rate_lo) + "," +
                fmt(rate_hi) + "]";
    return o;
}

// ---- criterion 3: chi-square quantiles --------------------------------------

Outcome chi2_accuracy() {
    Outcome o;
    const double q95 = chi2_quantile(0.95, 2);
    const double q50 = chi2_quantile(0.5, 2);
    if (std::fabs(q95 - (-2.0 * std::log(0.05))) > 1e-6) {
        fail(o, "p=.95 k=2: " + fmt(q95));
    }
    if (std::fabs(q50 - 2.0 * std::numbers::ln2) > 1e-6) {
        fail(o, "p=.5 k=2: " + fmt(q50));
    }
    for (std::size_t k = 1; k <= 100; ++k) {
        double prev = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double q = chi2_quantile(i / 101.0, k);
            if (q <= prev) {
                fail(o, "not increasing in p at k=" + std::to_string(k));
                break;
            }
            prev = q;
        }
    }
    double prev_k = 0.0;
    for (std::size_t k = 1; k <= 100; ++k) {
        const double q = chi2_quantile(0.9, k);
        if (q <= prev_k) fail(o, "not increasing in k at k=" + std::to_string(k));
        prev_k = q;
    }
    o.detail += "5.9915/" + fmt(q95) + ", 1.3863/" + fmt(q50);
    return o;
}

// ---- criterion 4: AVAR oracle equivalence -----------------------------------

double avar_naive(const std::vector<double>& x, std::size_t n) {
    const std::size_t N = x.size();
    const std::size_t terms = N - 2 * n + 1;
    double acc = 0.0;
    for (std::size_t k = 0; k < terms; ++k) {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t i = k; i < k + n; ++i) s1 += x[i];
        for (std::size_t i = k + n; i < k + 2 * n; ++i) s2 += x[i];
        const double d = s2 / static_cast<double>(n) - s1 / static_cast<double>(n);
        acc += d * d;
    }
    return acc / (2.0 * static_cast<double>(terms));
}

Outcome avar_equivalence() {
    Outcome o;
    const AvarCurve hand = allan_variance(TimeSeries({1.0, 2.0, 3.0, 4.0}, 1.0), {1});
    if (hand.avar[0] != 0.5) fail(o, "hand case [1,2,3,4] gave " + fmt(hand.avar[0]));

    // dyadic-valued series keep all cluster sums exact, so both evaluation
    // orders must agree bit for bit
    std::mt19937_64 eng(4242);
    std::size_t checked = 0;
    for (std::size_t N = 4; N <= 64; ++N) {
        std::vector<double> x(N);
        for (auto& v : x) {
            v = static_cast<double>(static_cast<int>(eng() % 32001) - 16000) / 16.0;
        }
        std::vector<std::size_t> grid;
        for (std::size_t n = 1; 2 * n < N; ++n) grid.push_back(n);
        const AvarCurve curve = allan_variance(TimeSeries(x, 1.0), grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            ++checked;
            if (curve.avar[i] != avar_naive(x, grid[i])) {
                fail(o, "mismatch at N=" + std::to_string(N) + " n=" + std::to_string(grid[i]));
            }
        }
    }
    o.detail += std::to_string(checked) + " (N,n) cells exact, hand case 0.5";
    return o;
}

// ---- criterion 5: coefficient round-trip ------------------------------------

Outcome coefficient_round_trip() {
    Outcome o;
    std::vector<double> extracted;
    for (double sigma : {0.5, 1.0, 2.0}) {
        const TimeSeries w = gaussian_white(200000, sigma, 606);
        const NoiseCoefficients c =
            extract_coefficients(allan_variance(w, default_cluster_grid(w.size(), 10)));
        if (!c.white_n) {
            fail(o, "white_n absent at sigma=" + fmt(sigma));
            continue;
        }
        extracted.push_back(*c.white_n);
        if (std::fabs(*c.white_n - sigma) > 0.1 * sigma) {
            fail(o, "white_n " + fmt(*c.white_n) + " vs sigma " + fmt(sigma));
        }
    }
    if (extracted.size() == 3) {
        const double r1 = extracted[1] / extracted[0];
        const double r2 = extracted[2] / extracted[1];
        if (std::fabs(r1 - 2.0) > 0.2 || std::fabs(r2 - 2.0) > 0.2) {
            fail(o, "white_n not proportional to sigma (ratios " + fmt(r1) + "," + fmt(r2) + ")");
        }
    }

    const TimeSeries walk = synth_single(2.0, 0.25, 200000, 607);
    const NoiseCoefficients rw =
        extract_coefficients(allan_variance(walk, default_cluster_grid(walk.size(), 10)));
    if (!rw.random_walk_k) fail(o, "random_walk_k absent for alpha=2 input");
    if (rw.flicker_b) fail(o, "flicker_b present for alpha=2 input");

    const TimeSeries white = synth_single(0.0, 1.0, 200000, 608);
    const NoiseCoefficients wn =
        extract_coefficients(allan_variance(white, default_cluster_grid(white.size(), 10)));
    if (wn.random_walk_k) fail(o, "random_walk_k present for alpha=0 input");
    if (wn.flicker_b) fail(o, "flicker_b present for alpha=0 input");

    if (o.pass) {
        o.detail = "white_n = " + fmt(extracted[0]) + "/" + fmt(extracted[1]) + "/" +
                   fmt(extracted[2]) + " for sigma .5/1/2; alpha=2 -> K only; alpha=0 -> N only";
    }
    return o;
}

// ---- criterion 6: Wiener weights --------------------------------------------

Outcome wiener_weight_checks() {
    Outcome o;
    const FilterWeights ones = wiener_weights(2.0, 8);
    for (double h : ones.h) {
        if (h != 1.0) fail(o, "alpha=2 weights not all ones");
    }
    const FilterWeights ident = wiener_weights(0.0, 8);
    if (ident.h[0] != 1.0) fail(o, "alpha=0 h[0]");
    for (std::size_t j = 1; j < ident.h.size(); ++j) {
        if (ident.h[j] != 0.0) fail(o, "alpha=0 tail not zero");
    }
    const FilterWeights fl = wiener_weights(1.0, 4);
    if (fl.h[0] != 1.0 || fl.h[1] != 0.5 || fl.h[2] != 0.375 || fl.h[3] != 0.3125) {
        fail(o, "alpha=1 first four weights wrong");
    }

    // integrator equivalence, direct path, element tolerance conditioned on
    // the running absolute sum
    const std::size_t m = 4096;
    const TimeSeries out = synth_single(2.0, 0.7, m, 609);
    const TimeSeries w = gaussian_white(m, 0.7, 609);
    double acc = 0.0, abs_acc = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        acc += w[i];
        abs_acc += std::fabs(w[i]);
        worst = std::max(worst, std::fabs(out[i] - acc) / (1.0 + abs_acc));
    }
    if (worst > 1e-12) fail(o, "alpha=2 vs cumsum rel err " + fmt(worst));
    o.detail += "cumsum rel err " + fmt(worst);
    return o;
}

// ---- criterion 7: gradient verification -------------------------------------

Outcome gradient_verification() {
    using namespace vlcn::cae;
    Outcome o;

    CaeArchitecture arch;
    arch.input_length = 16;
    arch.encoder = {{4, 3, 2}, {2, 3, 2}};
    CaeModel model(arch, 12345);
    std::mt19937_64 beng(777);  // generic point: keep ReLU inputs off the kink
    for (auto& layer : model.layers()) {
        for (auto& b : layer.biases()) {
            b = 0.01 + 0.09 * (static_cast<double>(beng() >> 11) * 0x1.0p-53);
        }
    }

    std::vector<SignalPair> batch(3);
    std::mt19937_64 seng(42);
    for (auto& pair : batch) {
        pair.noisy.resize(16);
        pair.clean.resize(16);
        for (auto& v : pair.noisy) {
            v = 0.05 + 0.9 * (static_cast<double>(seng() >> 11) * 0x1.0p-53);
        }
        for (auto& v : pair.clean) {
            v = 0.05 + 0.9 * (static_cast<double>(seng() >> 11) * 0x1.0p-53);
        }
    }

    ModelGrads grads;
    batch_loss_and_grads(model, batch, grads);
    std::vector<double> analytic;
    for (const auto& lg : grads.layers) {
        analytic.insert(analytic.end(), lg.w.begin(), lg.w.end());
        analytic.insert(analytic.end(), lg.b.begin(), lg.b.end());
    }
    std::vector<double*> params;
    for (auto& layer : model.layers()) {
        for (auto& w : layer.weights()) params.push_back(&w);
        for (auto& b : layer.biases()) params.push_back(&b);
    }

    double worst = 0.0;
    const double h = 1e-5;
    ModelGrads scratch;
    for (std::size_t p = 0; p < params.size(); ++p) {
        const double orig = *params[p];
        *params[p] = orig + h;
        const double lp = batch_loss_and_grads(model, batch, scratch);
        *params[p] = orig - h;
        const double lm = batch_loss_and_grads(model, batch, scratch);
        *params[p] = orig;
        const double numeric = (lp - lm) / (2.0 * h);
        const double denom = std::max({std::fabs(numeric), std::fabs(analytic[p]), 1e-8});
        worst = std::max(worst, std::fabs(numeric - analytic[p]) / denom);
    }
    if (worst >= 1e-4) fail(o, "worst finite-difference rel err " + fmt(worst));

    // adjoint identity on small shapes
    double worst_adj = 0.0;
    std::mt19937_64 eng(77);
    for (std::size_t len = 4; len <= 8; ++len) {
        ConvSpec cs;
        cs.in_channels = 2;
        cs.out_channels = 3;
        cs.kernel_size = 3;
        cs.stride = 2;
        cs.pad_left = 1;
        cs.pad_right = 1;
        cs.activation = Activation::identity;
        ConvLayer conv(cs);
        for (auto& w : conv.weights()) {
            w = (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 0.5;
        }
        const std::size_t out_len = cs.out_length(len);

        ConvSpec ts;
        ts.transposed = true;
        ts.in_channels = 3;
        ts.out_channels = 2;
        ts.kernel_size = 3;
        ts.stride = 2;
        ts.pad_left = 1;
        ts.pad_right = 1;
        ts.activation = Activation::identity;
        ts.output_extend = len - ((out_len - 1) * 2 + 3 - 2);
        ConvLayer tconv(ts);
        tconv.weights() = conv.weights();

        Tensor1D x(2, len), y(3, out_len);
        for (auto& v : x.data) v = (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 0.5;
        for (auto& v : y.data) v = (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 0.5;
        const Tensor1D cx = conv.forward(x);
        const Tensor1D ty = tconv.forward(y);
        double lhs = 0.0, rhs = 0.0;
        for (std::size_t i = 0; i < cx.data.size(); ++i) lhs += cx.data[i] * y.data[i];
        for (std::size_t i = 0; i < x.data.size(); ++i) rhs += x.data[i] * ty.data[i];
        worst_adj = std::max(worst_adj,
                             std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)}));
    }
    if (worst_adj > 1e-12) fail(o, "adjoint identity rel err " + fmt(worst_adj));
    o.detail += "fd rel err " + fmt(worst) + ", adjoint err " + fmt(worst_adj);
    return o;
}

// ---- criterion 8: end-to-end denoising --------------------------------------

Outcome end_to_end_denoising() {
    using namespace vlcn::cae;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();

    DatasetBuildConfig cfg;
    cfg.ook.on_duration_s = 1e-3;
    cfg.ook.off_duration_s = 4e-3;
    cfg.sample_rate_hz = 51250.0;  // 1ms/4ms pattern -> 256-sample period
    cfg.record_length = 256;
    cfg.noise.components = {{0.0, 0.06, 1.0}, {2.0, 0.005, 1.0}};  // white + random walk
    cfg.count = 500;
    cfg.seed = 2024;
    const std::vector<SignalPair> dataset = build_ook_dataset(cfg);

    CaeArchitecture arch;
    arch.input_length = 256;
    arch.encoder = {{16, 3, 2}, {8, 3, 2}};
    CaeModel model(arch, 7);

    TrainConfig tc;
    tc.epochs = 30;
    tc.batch_size = 50;
    tc.seed = 8;
    const TrainHistory hist = train(model, dataset, tc);

    double sq_noisy = 0.0, sq_denoised = 0.0;
    std::size_t samples = 0;
    for (std::size_t idx : hist.holdout_indices) {
        const SignalPair& pair = dataset[idx];
        const std::vector<double> denoised = model.run(pair.noisy);
        for (std::size_t j = 0; j < pair.clean.size(); ++j) {
            const double dn = pair.noisy[j] - pair.clean[j];
            const double dd = denoised[j] - pair.clean[j];
            sq_noisy += dn * dn;
            sq_denoised += dd * dd;
        }
        samples += pair.clean.size();
    }
    const double rmse_noisy = std::sqrt(sq_noisy / static_cast<double>(samples));
    const double rmse_denoised = std::sqrt(sq_denoised / static_cast<double>(samples));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!(rmse_denoised < rmse_noisy)) {
        fail(o, "no improvement: " + fmt(rmse_denoised) + " vs " + fmt(rmse_noisy));
    }
    if (rmse_denoised > 0.7 * rmse_noisy) {
        fail(o, "reduction below 30%: " + fmt(100.0 * (1.0 - rmse_denoised / rmse_noisy)) + "%");
    }
    if (secs > 600.0) fail(o, "took " + fmt(secs) + "s (>600s)");
    o.detail += "held-out rmse " + fmt(rmse_noisy) + " -> " + fmt(rmse_denoised) + " (" +
                fmt(100.0 * (1.0 - rmse_denoised / rmse_noisy)) + "% lower) in " + fmt(secs) +
                "s";
    return o;
}

// ---- criterion 9: RMSE formula ----------------------------------------------

Outcome rmse_closed_forms() {
    using vlcn::cae::rmse;
    Outcome o;
    const double a = rmse(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 1.0});
    const double b = rmse(std::vector<double>{0.0, 1.0}, std::vector<double>{1.0, 1.0});
    if (std::fabs(a - 1.0) > 1e-12) fail(o, "[0,0] vs [1,1] -> " + fmt(a));
    if (std::fabs(b - std::sqrt(0.5)) > 1e-12) fail(o, "[0,1] vs [1,1] -> " + fmt(b));
    o.detail = fmt(a) + ", " + fmt(b);
    return o;
}

// ---- criterion 10: manifest reproducibility ----------------------------------

std::string vlcn_bin() {
    if (const char* env = std::getenv("VLCN_BIN")) return env;
    for (const char* guess : {"./build/tools/vlcn", "./tools/vlcn", "../tools/vlcn"}) {
        if (fs::exists(guess)) return fs::absolute(guess).string();
    }
    return "vlcn";
}

int run_cmd(const std::string& args, const fs::path& cwd) {
    const std::string cmd =
        "cd '" + cwd.string() + "' && '" + vlcn_bin() + "' " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Outcome manifest_reproducibility() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "vlcn_acceptance_rerun";
    fs::remove_all(dir);
    fs::create_directories(dir);

    struct Step {
        std::string args;
        std::string manifest;
        std::vector<std::string> outputs;
    };
    const std::vector<Step> steps = {
        {"synth --length 20000 --component 0:1:1 --component 2:0.01:1 --seed 5",
         "synth.manifest.json",
         {"noise.csv"}},
        {"analyze avar noise.csv --points-per-decade 8", "analyze-avar.manifest.json",
         {"avar.csv", "avar.summary.json"}},
        {"analyze ljung-box noise.csv --max-lag 50", "analyze-ljung-box.manifest.json",
         {"ljung_box.csv", "ljung_box.summary.json"}},
        {"analyze coeffs noise.csv", "analyze-coeffs.manifest.json", {"coeffs.json"}},
        {"dataset --count 12 --input-length 64 --sample-rate 12800 --component 0:0.05:1 "
         "--seed 6",
         "dataset.manifest.json",
         {"dataset/manifest.json", "dataset/pair00011_noisy.csv"}},
        {"train --dataset dataset/manifest.json --filters 4,2 --epochs 2 --batch-size 6 "
         "--seed 7",
         "train.manifest.json",
         {"model.bin", "loss_history.csv"}},
        {"denoise --model model.bin --input dataset/pair00000_noisy.csv",
         "denoise.manifest.json",
         {"denoised.csv"}},
        {"eval --dataset dataset/manifest.json --model model.bin", "eval.manifest.json",
         {"rmse_report.csv"}},
    };

    for (const auto& step : steps) {
        if (run_cmd(step.args, dir) != 0) {
            fail(o, "command failed: " + step.args);
            return o;
        }
    }
    std::vector<std::pair<std::string, std::string>> snapshots;
    for (const auto& step : steps) {
        for (const auto& out : step.outputs) {
            snapshots.emplace_back(out, slurp(dir / out));
        }
    }
    for (const auto& step : steps) {
        if (run_cmd("rerun " + step.manifest, dir) != 0) {
            fail(o, "rerun failed: " + step.manifest);
            return o;
        }
    }
    std::size_t compared = 0;
    for (const auto& [name, before] : snapshots) {
        ++compared;
        if (slurp(dir / name) != before) {
            fail(o, "output changed after rerun: " + name);
        }
    }
    o.detail += std::to_string(steps.size()) + " commands, " + std::to_string(compared) +
                " outputs bit-identical";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "slope reproduction for alpha 0/1/2", slope_reproduction},
        {2, "Ljung-Box discrimination", ljung_box_discrimination},
        {3, "chi-square quantile accuracy", chi2_accuracy},
        {4, "Allan variance oracle equivalence", avar_equivalence},
        {5, "coefficient round-trip", coefficient_round_trip},
        {6, "Wiener filter weights", wiener_weight_checks},
        {7, "gradient verification", gradient_verification},
        {8, "end-to-end denoising", end_to_end_denoising},
        {9, "RMSE closed forms", rmse_closed_forms},
        {10, "manifest reproducibility", manifest_reproducibility},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %2d: %s%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.empty() ? "" : " -- ", o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
