#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>

#include "lessinfer/experiments.hpp"

using namespace lessinfer;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("lessinfer_exp_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::filesystem::path write(const std::string& name, const std::string& text) const {
        const auto file = path / name;
        std::ofstream out(file);
        out << text;
        return file;
    }
};

const char* kSmallWorld = R"({
  "schema_version": 1,
  "width": 3, "height": 3,
  "start": [0, 0], "goal": [2, 2],
  "obstacles": [], "objects": [[0, 2], [2, 0]],
  "features": ["object-proximity:0", "object-proximity:1"]
})";

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t line_count(const std::filesystem::path& p) {
    const std::string text = slurp(p);
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("the four-option closed form responds to lambda") {
    const TurkPrediction even = run_turk_predict(1.0);
    // lambda = 1: softmax is uniform; the density-corrected rule gives the
    // lone option half the mass.
    for (double p : even.boltzmann_probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(even.less_probs[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(even.less_probs[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-9));

    const double lambda = 0.475 / 0.525;
    const TurkPrediction paper = run_turk_predict(lambda);
    CHECK(paper.boltzmann_probs[0] == doctest::Approx(lambda / (lambda + 3)).epsilon(1e-9));
    CHECK(paper.less_probs[0] == doctest::Approx(0.475).epsilon(1e-9));

    CHECK_THROWS_AS(run_turk_predict(0.0), argument_error);
    CHECK_THROWS_AS(run_turk_predict(-2.0), argument_error);
}

TEST_CASE("a small factorial sweep writes complete, sane outputs") {
    TempDir tmp;
    tmp.write("w.json", kSmallWorld);
    const auto cfg_file = tmp.write("run.json", R"({
      "schema_version": 1,
      "experiment": "inference-compare",
      "world": "w.json",
      "max_length": 6,
      "beta": 4.0,
      "seeds": 2,
      "demo_count": 3,
      "out_dir": ")" + (tmp.path / "out").string() + R"("
    })");

    const ExperimentConfig cfg = ExperimentConfig::load(cfg_file, {}, std::nullopt, std::nullopt);
    const ExperimentReport report = run_experiment(cfg);

    CHECK(std::filesystem::exists(report.out_dir / "summary.csv"));
    CHECK(std::filesystem::exists(report.out_dir / "details.csv"));
    CHECK(std::filesystem::exists(report.out_dir / "posteriors.csv"));
    CHECK(std::filesystem::exists(report.out_dir / "demos.csv"));
    CHECK(std::filesystem::exists(report.out_dir / "table.csv"));
    CHECK(std::filesystem::exists(report.out_dir / "metadata.json"));

    // 8 theta* x 2 seeds x 4 sampler/inference cells, plus a header.
    CHECK(line_count(report.out_dir / "details.csv") == 8 * 2 * 4 + 1);

    // Summary metrics all live in [0, 1].
    for (const char* key : {"mean_tp_bb", "mean_tp_bl", "mean_tp_lb", "mean_tp_ll",
                            "mean_tm_bb", "mean_tm_bl", "mean_tm_lb", "mean_tm_ll"}) {
        REQUIRE(report.summary.count(key) == 1);
        CHECK(report.summary.at(key) >= 0.0);
        CHECK(report.summary.at(key) <= 1.0);
    }

    // Every data row carries the config hash.
    const std::string details = slurp(report.out_dir / "details.csv");
    std::size_t hash_rows = 0, pos = 0;
    while ((pos = details.find(report.config_hash_hex, pos)) != std::string::npos) {
        ++hash_rows;
        pos += report.config_hash_hex.size();
    }
    CHECK(hash_rows == 8 * 2 * 4);
}

TEST_CASE("a small misspecified sweep prefers some inference and stays consistent") {
    TempDir tmp;
    tmp.write("w.json", kSmallWorld);
    const auto cfg_file = tmp.write("run.json", R"({
      "schema_version": 1,
      "experiment": "misspecify",
      "world": "w.json",
      "max_length": 6,
      "beta": 4.0,
      "seeds": 2,
      "demo_count": 3,
      "extra_features": ["mean-x", "mean-y"],
      "out_dir": ")" + (tmp.path / "out").string() + R"("
    })");

    const ExperimentConfig cfg = ExperimentConfig::load(cfg_file, {}, std::nullopt, std::nullopt);
    const ExperimentReport report = run_experiment(cfg);

    REQUIRE(report.summary.count("mean_tp_inference_boltzmann") == 1);
    REQUIRE(report.summary.count("mean_tp_inference_less") == 1);
    // The aliases point at the same cells.
    CHECK(report.summary.at("mean_tp_inference_boltzmann") ==
          report.summary.at("mean_tp_lb"));
    CHECK(report.summary.at("mean_tp_inference_less") ==
          report.summary.at("mean_tp_ll"));
    CHECK(std::filesystem::exists(report.out_dir / "details.csv"));
}

TEST_CASE("a small robustness sweep clips sizes and converges at the full set") {
    TempDir tmp;
    tmp.write("w.json", kSmallWorld);
    const auto cfg_file = tmp.write("run.json", R"({
      "schema_version": 1,
      "experiment": "robustness",
      "world": "w.json",
      "max_length": 6,
      "beta": 2.0,
      "seeds": [5],
      "demo_count": 4,
      "subsamples": 3,
      "sample_sizes": [4, 999],
      "out_dir": ")" + (tmp.path / "out").string() + R"("
    })");

    const ExperimentConfig cfg = ExperimentConfig::load(cfg_file, {}, std::nullopt, std::nullopt);
    const ExperimentReport report = run_experiment(cfg);

    // 999 exceeds the enumerable set and is clipped (with a warning).
    REQUIRE(!report.warnings.empty());
    CHECK(report.summary.count("single_kl_boltzmann_S4") == 1);
    CHECK(report.summary.count("single_kl_less_S4") == 1);

    // At the full set size every subsample is the whole set, so posteriors
    // coincide and the aggregate divergence is exactly zero.
    const std::size_t full = static_cast<std::size_t>(report.summary.at("largest_size"));
    CHECK(report.summary.at("single_kl_boltzmann_S" + std::to_string(full)) == 0.0);
    CHECK(report.summary.at("single_kl_less_S" + std::to_string(full)) == 0.0);

    CHECK(std::filesystem::exists(report.out_dir / "kl.csv"));
    CHECK(std::filesystem::exists(report.out_dir / "summary.csv"));
}

TEST_CASE("experiment reruns are byte-identical") {
    TempDir tmp;
    tmp.write("w.json", kSmallWorld);
    const ExperimentConfig cfg = ExperimentConfig::load(
        tmp.write("run.json", R"({
          "schema_version": 1,
          "experiment": "robustness",
          "world": "w.json",
          "max_length": 6,
          "beta": 2.0,
          "seeds": [5],
          "demo_count": 3,
          "subsamples": 3,
          "sample_sizes": [4],
          "out_dir": ")" + (tmp.path / "out").string() + R"("
        })"),
        {}, std::nullopt, std::nullopt);

    const ExperimentReport a = run_experiment(cfg);
    std::map<std::string, std::string> snapshot;
    for (const auto& f : a.files) snapshot[f.string()] = slurp(f);

    const ExperimentReport b = run_experiment(cfg);  // same config, same out_dir
    REQUIRE(b.files.size() == a.files.size());
    for (const auto& f : b.files) {
        CAPTURE(f.string());
        REQUIRE(snapshot.count(f.string()) == 1);
        CHECK(slurp(f) == snapshot.at(f.string()));
    }
}

TEST_CASE("running a config under the wrong kind is refused") {
    TempDir tmp;
    tmp.write("w.json", kSmallWorld);
    const auto cfg_file = tmp.write("run.json", R"({
      "schema_version": 1,
      "experiment": "robustness",
      "world": "w.json",
      "max_length": 6,
      "seeds": [1],
      "subsamples": 2,
      "sample_sizes": [4],
      "out_dir": "x"
    })");
    ExperimentConfig cfg = ExperimentConfig::load(cfg_file, {}, std::nullopt, std::nullopt);
    cfg.kind = ExperimentKind::turk_predict;  // simulate a mismatched dispatch
    CHECK_THROWS_AS(run_robustness(cfg), config_error);
}
