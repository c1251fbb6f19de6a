#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string vlcn_bin() {
    if (const char* env = std::getenv("VLCN_BIN")) return env;
    for (const char* guess : {"./build/tools/vlcn", "./tools/vlcn", "../tools/vlcn"}) {
        if (fs::exists(guess)) return fs::absolute(guess).string();
    }
    return "vlcn";
}

int run(const std::string& args, const fs::path& cwd) {
    const std::string cmd =
        "cd '" + cwd.string() + "' && '" + vlcn_bin() + "' " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "vlcn_test_cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("synth writes a deterministic capture plus manifest") {
    const auto dir = fresh_dir("synth");
    REQUIRE(run("synth --length 500 --alpha 1 --sigma 0.5 --seed 7", dir) == 0);
    REQUIRE(fs::exists(dir / "noise.csv"));
    REQUIRE(fs::exists(dir / "synth.manifest.json"));
    const std::string first = slurp(dir / "noise.csv");

    REQUIRE(run("synth --length 500 --alpha 1 --sigma 0.5 --seed 7 --output noise2.csv", dir) ==
            0);
    CHECK(slurp(dir / "noise2.csv") == first);

    REQUIRE(run("synth --length 500 --alpha 1 --sigma 0.5 --seed 8 --output noise3.csv", dir) ==
            0);
    CHECK(slurp(dir / "noise3.csv") != first);
}

TEST_CASE("synth composite flag and usage errors") {
    const auto dir = fresh_dir("synth_usage");
    CHECK(run("synth --length 100 --component 0:1:1 --component 2:0.01:1 --seed 2", dir) == 0);
    CHECK(run("synth --alpha 3 --length 100", dir) == 1);
    CHECK(run("synth --alpha 1", dir) == 1);  // missing --length
    CHECK(run("definitely-not-a-command", dir) == 1);
}

TEST_CASE("analyze emits plot-ready tables") {
    const auto dir = fresh_dir("analyze");
    REQUIRE(run("synth --length 20000 --alpha 0 --sigma 1 --seed 5", dir) == 0);

    REQUIRE(run("analyze avar noise.csv --points-per-decade 10", dir) == 0);
    const std::string avar = slurp(dir / "avar.csv");
    CHECK(avar.rfind("tau_s,avar,adev\n", 0) == 0);

    REQUIRE(run("analyze ljung-box noise.csv --max-lag 100 --alpha 0.05", dir) == 0);
    const std::string lb = slurp(dir / "ljung_box.csv");
    CHECK(lb.rfind("lag,q_stat,threshold,reject\n", 0) == 0);
    std::size_t rows = 0;
    for (char c : lb) rows += (c == '\n') ? 1 : 0;
    CHECK(rows == 101);  // header + one per lag

    CHECK(run("analyze avar missing_file.csv", dir) == 2);
}

TEST_CASE("analyze coeffs on pure white noise reports only white_n") {
    const auto dir = fresh_dir("coeffs");
    REQUIRE(run("synth --length 200000 --alpha 0 --sigma 1 --seed 12", dir) == 0);
    REQUIRE(run("analyze coeffs noise.csv", dir) == 0);
    const auto doc = nlohmann::json::parse(slurp(dir / "coeffs.json"));
    CHECK(doc.contains("white_n"));
    CHECK_FALSE(doc.contains("flicker_b"));
    CHECK_FALSE(doc.contains("random_walk_k"));
    CHECK(doc["fit_report"].contains("white"));
}

TEST_CASE("dataset generation is deterministic and validates count") {
    const auto dir = fresh_dir("dataset");
    const std::string flags =
        "dataset --count 4 --input-length 64 --sample-rate 12800 "
        "--component 0:0.05:1 --seed 21 ";
    REQUIRE(run(flags + "--dir-name a", dir) == 0);
    REQUIRE(run(flags + "--dir-name b", dir) == 0);
    CHECK(slurp(dir / "a" / "pair00003_noisy.csv") == slurp(dir / "b" / "pair00003_noisy.csv"));
    CHECK(slurp(dir / "a" / "manifest.json") == slurp(dir / "b" / "manifest.json"));

    CHECK(run("dataset --count 0 --input-length 64", dir) == 1);

    REQUIRE(run("dataset --count 1 --input-length 64 --sample-rate 12800 "
                "--component 0:0.05:1 --dir-name single",
                dir) == 0);
    CHECK(fs::exists(dir / "single" / "pair00000_clean.csv"));
}

TEST_CASE("train, denoise and eval round trip") {
    const auto dir = fresh_dir("train");
    REQUIRE(run("dataset --count 24 --input-length 64 --sample-rate 12800 "
                "--component 0:0.05:1 --seed 31",
                dir) == 0);
    REQUIRE(run("train --dataset dataset/manifest.json --filters 4,2 --epochs 3 "
                "--batch-size 8 --seed 9",
                dir) == 0);
    REQUIRE(fs::exists(dir / "model.bin"));
    REQUIRE(fs::exists(dir / "loss_history.csv"));

    REQUIRE(run("denoise --model model.bin --input dataset/pair00000_noisy.csv", dir) == 0);
    REQUIRE(fs::exists(dir / "denoised.csv"));

    // denoising a capture of the wrong length is refused up front
    REQUIRE(run("synth --length 100 --alpha 0 --output short.csv", dir) == 0);
    CHECK(run("denoise --model model.bin --input short.csv", dir) == 2);

    REQUIRE(run("eval --dataset dataset/manifest.json --model model.bin", dir) == 0);
    REQUIRE(fs::exists(dir / "rmse_report.csv"));

    // feeding the clean captures back as "denoised" scores an exact zero
    fs::create_directories(dir / "fake");
    for (int i = 0; i < 24; ++i) {
        char from[64], to[64];
        std::snprintf(from, sizeof(from), "dataset/pair%05d_clean.csv", i);
        std::snprintf(to, sizeof(to), "fake/pair%05d_denoised.csv", i);
        fs::copy_file(dir / from, dir / to);
    }
    REQUIRE(run("eval --dataset dataset/manifest.json --denoised fake --output-dir ev0", dir) ==
            0);
    const std::string report = slurp(dir / "ev0" / "rmse_report.csv");
    CHECK(report.find(",0\n") != std::string::npos);  // rmse_denoised column is exactly 0
}

TEST_CASE("rerun reproduces outputs bit-exactly") {
    const auto dir = fresh_dir("rerun");
    REQUIRE(run("synth --length 2000 --component 1:0.7:1 --seed 77", dir) == 0);
    const std::string noise = slurp(dir / "noise.csv");
    const std::string manifest = slurp(dir / "synth.manifest.json");

    fs::remove(dir / "noise.csv");
    REQUIRE(run("rerun synth.manifest.json", dir) == 0);
    CHECK(slurp(dir / "noise.csv") == noise);
    CHECK(slurp(dir / "synth.manifest.json") == manifest);
}

}  // TEST_SUITE
