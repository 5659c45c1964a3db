#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "lessinfer/config.hpp"

using namespace lessinfer;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("lessinfer_cfg_test_" + std::to_string(::getpid()));
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

const char* kWorldJson = R"({
  "schema_version": 1,
  "width": 3, "height": 3,
  "start": [0, 0], "goal": [2, 2],
  "obstacles": [], "objects": [[0, 2]],
  "features": ["object-proximity:0"]
})";

const char* kRunJson = R"({
  "schema_version": 1,
  "experiment": "inference-compare",
  "world": "w.json",
  "max_length": 4,
  "beta": 2.5,
  "seeds": 3,
  "demo_count": 2,
  "out_dir": "out/test"
})";

}  // namespace

TEST_CASE("configs load with relative world paths and defaults") {
    TempDir tmp;
    tmp.write("w.json", kWorldJson);
    const auto file = tmp.write("run.json", kRunJson);

    const ExperimentConfig cfg = ExperimentConfig::load(file, {}, std::nullopt, std::nullopt);
    CHECK(cfg.kind == ExperimentKind::inference_compare);
    CHECK(cfg.schema_version == 1);
    CHECK(cfg.world_file == tmp.path / "w.json");
    CHECK(cfg.max_length == 4);
    CHECK(cfg.beta == 2.5);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{0, 1, 2});
    CHECK(cfg.demo_count == 2);
    CHECK(cfg.out_dir == "out/test");
    CHECK(cfg.hash_hex().size() == 16);
}

TEST_CASE("an integer seed count expands to 0..n-1 and a list passes through") {
    TempDir tmp;
    tmp.write("w.json", kWorldJson);
    std::string text = kRunJson;
    text.replace(text.find("\"seeds\": 3"), 10, "\"seeds\": [7, 9]");
    const auto file = tmp.write("run.json", text);
    const ExperimentConfig cfg = ExperimentConfig::load(file, {}, std::nullopt, std::nullopt);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{7, 9});
}

TEST_CASE("command-line seed and output overrides beat the file") {
    TempDir tmp;
    tmp.write("w.json", kWorldJson);
    const auto file = tmp.write("run.json", kRunJson);
    const ExperimentConfig cfg =
        ExperimentConfig::load(file, {}, std::filesystem::path("elsewhere"), 5);
    CHECK(cfg.seeds.size() == 5);
    CHECK(cfg.out_dir == "elsewhere");
}

TEST_CASE("key=value overrides reach into the document") {
    TempDir tmp;
    tmp.write("w.json", kWorldJson);
    const auto file = tmp.write("run.json", kRunJson);

    const ExperimentConfig cfg = ExperimentConfig::load(
        file, {"beta=9.5", "demo_count=4", "bandwidth.fixed=0.2"}, std::nullopt,
        std::nullopt);
    CHECK(cfg.beta == 9.5);
    CHECK(cfg.demo_count == 4);
    REQUIRE(cfg.bandwidth.fixed.has_value());
    CHECK(*cfg.bandwidth.fixed == 0.2);

    CHECK_THROWS_AS(ExperimentConfig::load(file, {"no-equals-sign"}, std::nullopt,
                                           std::nullopt),
                    config_error);
}

TEST_CASE("the config hash tracks effective content") {
    TempDir tmp;
    tmp.write("w.json", kWorldJson);
    const auto file = tmp.write("run.json", kRunJson);

    const auto a = ExperimentConfig::load(file, {}, std::nullopt, std::nullopt);
    const auto b = ExperimentConfig::load(file, {}, std::nullopt, std::nullopt);
    CHECK(a.config_hash == b.config_hash);

    const auto c = ExperimentConfig::load(file, {"beta=9.5"}, std::nullopt, std::nullopt);
    CHECK(a.config_hash != c.config_hash);

    // Formatting-only changes hash the same: the canonical form is a
    // compact dump with sorted keys.
    std::string spaced = kRunJson;
    spaced.insert(spaced.find("\"beta\""), "\n\n    ");
    const auto file2 = tmp.write("run2.json", spaced);
    const auto d = ExperimentConfig::load(file2, {}, std::nullopt, std::nullopt);
    CHECK(a.config_hash == d.config_hash);
}

TEST_CASE("config validation rejects bad documents") {
    TempDir tmp;
    tmp.write("w.json", kWorldJson);

    SUBCASE("missing schema_version") {
        const auto file = tmp.write("bad.json", R"({"experiment": "robustness"})");
        CHECK_THROWS_AS(
            ExperimentConfig::load(file, {}, std::nullopt, std::nullopt), config_error);
    }
    SUBCASE("wrong schema_version") {
        std::string text = kRunJson;
        text.replace(text.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
        const auto file = tmp.write("bad.json", text);
        CHECK_THROWS_AS(
            ExperimentConfig::load(file, {}, std::nullopt, std::nullopt), config_error);
    }
    SUBCASE("unknown experiment kind") {
        std::string text = kRunJson;
        text.replace(text.find("inference-compare"), 17, "no-such-experiment");
        const auto file = tmp.write("bad.json", text);
        CHECK_THROWS_AS(
            ExperimentConfig::load(file, {}, std::nullopt, std::nullopt), config_error);
    }
    SUBCASE("negative beta") {
        const auto file = tmp.write("bad.json", kRunJson);
        CHECK_THROWS_AS(
            ExperimentConfig::load(file, {"beta=-1"}, std::nullopt, std::nullopt),
            config_error);
    }
    SUBCASE("world file missing") {
        std::string text = kRunJson;
        text.replace(text.find("w.json"), 6, "absent.json");
        const auto file = tmp.write("bad.json", text);
        CHECK_THROWS_AS(
            ExperimentConfig::load(file, {}, std::nullopt, std::nullopt), config_error);
    }
    SUBCASE("not json at all") {
        const auto file = tmp.write("bad.json", "not json {{{{");
        CHECK_THROWS_AS(
            ExperimentConfig::load(file, {}, std::nullopt, std::nullopt), config_error);
    }
    SUBCASE("nonexistent file") {
        CHECK_THROWS_AS(ExperimentConfig::load(tmp.path / "missing.json", {},
                                               std::nullopt, std::nullopt),
                        config_error);
    }
}

TEST_CASE("kind names round-trip") {
    for (const char* name : {"turk-predict", "inference-compare", "misspecify", "robustness"})
        CHECK(to_string(experiment_kind_from_string(name)) == name);
    CHECK_THROWS_AS(experiment_kind_from_string("factorial"), config_error);
}
