#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lessinfer/inference.hpp"
#include "lessinfer/kernel.hpp"

namespace lessinfer {

enum class ExperimentKind { turk_predict, inference_compare, misspecify, robustness };

ExperimentKind experiment_kind_from_string(const std::string& name);
std::string to_string(ExperimentKind kind);

// Parsed experiment configuration.  Loaded from a JSON document (schema in
// the README), with dotted-path --override entries applied before parsing,
// so the recorded config hash covers exactly what ran.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::inference_compare;
    int schema_version = 1;

    std::filesystem::path world_file;  // resolved against the config file dir
    std::size_t max_length = 10;
    double beta = 1.0;
    BandwidthSearch bandwidth;

    // Inference hypothesis grid; empty = the sign grid {-1,0,1}^k minus the
    // zero vector over the world's feature dimension.
    std::optional<ThetaGrid> theta_grid;

    std::vector<std::uint64_t> seeds;       // nonempty; see README semantics
    std::size_t demo_count = 5;             // demos per cell / per run
    std::vector<std::size_t> sample_sizes;  // robustness subsample sizes
    std::size_t subsample_count = 10;       // robustness sets per size
    double lambda = 1.0;                    // turk-predict control ratio
    std::vector<std::string> extra_features;  // misspecify sampler additions

    std::filesystem::path out_dir;

    // Canonical JSON text (sorted keys, after overrides) and its fingerprint;
    // every output row carries hash_hex() for traceability.
    std::string canonical_text;
    std::uint64_t config_hash = 0;
    std::string hash_hex() const;

    // Load + override + validate.  `overrides` entries are "dotted.key=value"
    // with the value parsed as JSON when possible (bare text otherwise);
    // cli_out/cli_seeds mirror the --out/--seeds flags and are applied as
    // overrides of out_dir / seeds.
    static ExperimentConfig load(const std::filesystem::path& file,
                                 const std::vector<std::string>& overrides = {},
                                 const std::optional<std::filesystem::path>& cli_out = std::nullopt,
                                 const std::optional<std::uint64_t>& cli_seeds = std::nullopt);

    void validate() const;  // throws config_error
};

}  // namespace lessinfer
