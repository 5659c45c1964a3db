#pragma once

#include <map>
#include <string>
#include <vector>

#include "lessinfer/config.hpp"
#include "lessinfer/metrics.hpp"
#include "lessinfer/sampler.hpp"

namespace lessinfer {

// Closed-form output of the controlled left-right prediction task.
struct TurkPrediction {
    double lambda = 1.0;
    std::vector<double> boltzmann_probs;  // 4 options, index 0 = left
    std::vector<double> less_probs;
};

// Both models' predictions on the 4-option geometry (one isolated left
// option, three tightly clustered right options) with the exp-reward ratio
// left:right set to lambda.  Runs the real choice rules on a synthetic set;
// densities work out to 1 vs 3 kernel peaks, so Boltzmann-left =
// lambda/(lambda+3) and LESS-left = lambda/(lambda+1).
TurkPrediction run_turk_predict(double lambda);

// What an experiment run leaves behind: the output directory, the files
// written, recorded warnings, and headline numbers for quick assertions
// (each also present in the CSVs).
struct ExperimentReport {
    std::filesystem::path out_dir;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
    std::string config_hash_hex;
    std::map<std::string, double> summary;
};

// 2x2 factorial (sampling model x inference model) over every (theta*, seed)
// cell: sample demos, run a batch posterior from a uniform prior, record
// TrueMatch / TruePosterior per cell plus matched-vs-mismatched means.
ExperimentReport run_inference_compare(const ExperimentConfig& config);

// Same sweep, but demos are drawn by the extended-feature sampler
// (sample_demos_misspecified) while inference sees only the world's reward
// features; compares the two inference models under misspecification.
ExperimentReport run_misspecify(const ExperimentConfig& config);

// Subsample-stability protocol: per (demonstration, method, sample size),
// 10 seeded subsamples forced to include the demonstration, one single-demo
// posterior each, one KLAggregate per 10-posterior collection; plus the
// batch variant where all demonstrations are pooled into a joint posterior.
// Emits per-size mean KLAggregate per method.
ExperimentReport run_robustness(const ExperimentConfig& config);

// Config-driven turk-predict run (writes the prediction CSV).
ExperimentReport run_turk_predict_report(const ExperimentConfig& config);

// Dispatch on config.kind.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace lessinfer
