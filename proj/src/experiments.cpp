#include "lessinfer/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>

#include <json.hpp>

#include "lessinfer/csv.hpp"
#include "lessinfer/rng.hpp"

namespace lessinfer {

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string u64_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// everything an experiment derives from its config before cells run
struct Prepared {
    GridWorld world;
    TrajectorySet full;
    Kernel kernel;
    ThetaGrid grid;
    std::vector<std::string> warnings;
};

Prepared prepare(const ExperimentConfig& config) {
    Prepared p;
    p.world = GridWorld::load(config.world_file);
    if (p.world.features.descriptors.empty())
        throw config_error("world file must declare feature descriptors");
    p.full = compute_features(enumerate_trajectories(p.world, config.max_length), p.world,
                              p.world.features);
    p.kernel = select_bandwidth(p.full, config.bandwidth);
    p.grid = config.theta_grid ? *config.theta_grid
                               : ThetaGrid::signs(p.world.features.dimension());
    p.grid.validate();
    for (const auto& theta : p.grid.candidates)
        if (theta.size() != p.world.features.dimension())
            throw config_error("theta grid dimension does not match the world's features");
    return p;
}

void write_metadata(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                    nlohmann::json extra, const std::vector<std::string>& warnings,
                    ExperimentReport& report) {
    nlohmann::json meta;
    meta["schema_version"] = 1;
    meta["experiment"] = to_string(config.kind);
    meta["config_hash"] = config.hash_hex();
    meta["tool_version"] = kToolVersion;
    meta["config"] = nlohmann::json::parse(config.canonical_text);
    meta["warnings"] = warnings;
    for (auto& [key, value] : extra.items()) meta[key] = value;

    std::filesystem::create_directories(out_dir);
    const auto path = out_dir / "metadata.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw resource_error("cannot write '" + path.string() + "'");
    out << meta.dump(2) << "\n";
    report.files.push_back(path);
}

double mean(const std::vector<double>& values) {
    double s = 0;
    for (double v : values) s += v;
    return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

}  // namespace

TurkPrediction run_turk_predict(double lambda) {
    if (!(lambda > 0) || !std::isfinite(lambda))
        throw argument_error("turk-predict: lambda must be positive and finite");

    // the decision structure of the bottleneck task: one isolated option on
    // the left passage, three feature-identical options on the right one.
    // cells are nominal; only the injected features matter to the rules.
    TrajectorySet set;
    set.feature_set = FeatureSet::parse({"mean-x"});
    for (int i = 0; i < 4; ++i) {
        Trajectory t;
        t.cells = {Cell{0, i}, Cell{1, i}};
        set.trajectories.push_back(t);
        set.features.push_back(FeatureVector{i == 0 ? 0.0 : 1.0});
    }

    // rewards: exp-reward ratio left:right = lambda via theta = -ln(lambda)
    // on the 0/1 feature; sigma small enough that the left-right kernel term
    // is negligible, so densities are 1 peak (left) vs 3 peaks (right)
    const RewardModel model{{-std::log(lambda)}, 1.0};
    const Kernel kernel{0.1};

    TurkPrediction pred;
    pred.lambda = lambda;
    pred.boltzmann_probs = boltzmann(set, model).probs;
    pred.less_probs = less_rule(set, model, kernel).probs;
    return pred;
}

ExperimentReport run_turk_predict_report(const ExperimentConfig& config) {
    ExperimentReport report;
    report.out_dir = config.out_dir;
    report.config_hash_hex = config.hash_hex();

    const TurkPrediction pred = run_turk_predict(config.lambda);

    write_metadata(config, config.out_dir, {{"lambda", config.lambda}}, {}, report);

    CsvWriter csv(config.out_dir / "predictions.csv",
                  {"config_hash", "lambda", "model", "option_index", "option_label",
                   "probability", "log_probability"});
    const char* labels[4] = {"left", "right-1", "right-2", "right-3"};
    for (const auto& [name, probs] :
         {std::pair{std::string("boltzmann"), pred.boltzmann_probs},
          std::pair{std::string("less"), pred.less_probs}}) {
        for (std::size_t i = 0; i < probs.size(); ++i)
            csv.write_row({report.config_hash_hex, format_double(config.lambda), name,
                           std::to_string(i), labels[i], format_double(probs[i]),
                           format_double(std::log(probs[i]))});
    }
    report.files.push_back(csv.path());

    report.summary["boltzmann_left"] = pred.boltzmann_probs[0];
    report.summary["less_left"] = pred.less_probs[0];
    return report;
}

namespace {

constexpr ModelKind kBothKinds[2] = {ModelKind::boltzmann, ModelKind::less};

// shared worker for the 2x2 factorial sweeps: inference-compare draws demos
// from each model in turn, misspecify draws them from the extended-feature
// sampler; both infer with both models on the reduced features
ExperimentReport run_factorial(const ExperimentConfig& config, bool misspecified) {
    ExperimentReport report;
    report.out_dir = config.out_dir;
    report.config_hash_hex = config.hash_hex();

    Prepared p = prepare(config);
    const std::string hash = report.config_hash_hex;

    // misspecified sampling: extend the world's features once; the sampler's
    // bandwidth is re-selected on the extended space
    TrajectorySet extended_set;
    Kernel extended_kernel{1.0};
    FeatureSet extended;
    if (misspecified) {
        std::vector<std::string> names = p.world.features.names();
        std::vector<std::string> extra = config.extra_features;
        if (extra.empty()) extra = {"mean-x", "mean-y"};
        names.insert(names.end(), extra.begin(), extra.end());
        extended = FeatureSet::parse(names);
        extended_set = compute_features(p.full, p.world, extended);
        extended_kernel = select_bandwidth(extended_set, config.bandwidth);
    }

    nlohmann::json extra_meta = {{"world", p.world.to_json()},
                                 {"enumerated_size", p.full.size()},
                                 {"bandwidth", p.kernel.bandwidth}};
    if (misspecified) extra_meta["extended_bandwidth"] = extended_kernel.bandwidth;
    write_metadata(config, config.out_dir, extra_meta, {}, report);

    CsvWriter details(config.out_dir / "details.csv",
                      {"config_hash", "theta_star", "theta_star_index", "seed", "stream_seed",
                       "sampler", "inference", "demo_count", "true_match", "true_posterior"});
    CsvWriter demos_csv(config.out_dir / "demos.csv",
                        {"config_hash", "theta_star", "seed", "sampler", "demo_ordinal",
                         "trajectory_index", "moves"});
    CsvWriter posteriors(config.out_dir / "posteriors.csv",
                         {"config_hash", "theta_star", "seed", "sampler", "inference",
                          "theta_label", "prior", "posterior"});

    const std::vector<ModelKind> samplers =
        misspecified ? std::vector<ModelKind>{ModelKind::less} : std::vector<ModelKind>{kBothKinds[0], kBothKinds[1]};

    // per (sampler, inference) and per (theta*, sampler, inference) metric pools
    std::map<std::string, std::vector<double>> tp_pool, tm_pool;
    auto pool_key = [&](ModelKind s, ModelKind i) {
        return to_string(s) + "/" + to_string(i);
    };

    const Belief prior = uniform_belief(p.grid);
    for (std::size_t ti = 0; ti < p.grid.size(); ++ti) {
        const auto& theta_star = p.grid.candidates[ti];
        const std::string& theta_label = p.grid.labels[ti];
        for (std::uint64_t seed : config.seeds) {
            for (ModelKind sampler_kind : samplers) {
                const std::string sampler_name =
                    misspecified ? "less-extended" : to_string(sampler_kind);
                const std::string tag = to_string(config.kind) + "/demos/theta=" +
                                        std::to_string(ti) + "/sampler=" + sampler_name;
                const std::uint64_t stream_seed = derive_seed(seed, tag);

                DemonstrationSet demos =
                    misspecified
                        ? sample_demos_misspecified(p.full, p.world, extended, theta_star,
                                                    config.beta, extended_kernel,
                                                    config.demo_count, stream_seed)
                        : sample_demos(p.full, theta_star, config.beta, sampler_kind, p.kernel,
                                       config.demo_count, stream_seed);

                for (std::size_t d = 0; d < demos.demos.size(); ++d)
                    demos_csv.write_row({hash, theta_label, std::to_string(seed), sampler_name,
                                         std::to_string(d), std::to_string(demos.indices[d]),
                                         demos.demos[d].moves()});

                for (ModelKind inference_kind : kBothKinds) {
                    const Belief post = batch_update(prior, p.grid, demos.demos, p.full,
                                                     inference_kind, p.kernel, config.beta);
                    const int tm = true_match(post, p.grid, ti);
                    const double tp = true_posterior(post, ti);
                    details.write_row({hash, theta_label, std::to_string(ti),
                                       std::to_string(seed), u64_hex(stream_seed), sampler_name,
                                       to_string(inference_kind),
                                       std::to_string(config.demo_count), std::to_string(tm),
                                       format_double(tp)});
                    for (std::size_t g = 0; g < p.grid.size(); ++g)
                        posteriors.write_row({hash, theta_label, std::to_string(seed),
                                              sampler_name, to_string(inference_kind),
                                              p.grid.labels[g], format_double(prior.probs[g]),
                                              format_double(post.probs[g])});
                    tp_pool[pool_key(sampler_kind, inference_kind)].push_back(tp);
                    tm_pool[pool_key(sampler_kind, inference_kind)].push_back(tm);
                    tp_pool[theta_label + "|" + pool_key(sampler_kind, inference_kind)].push_back(tp);
                    tm_pool[theta_label + "|" + pool_key(sampler_kind, inference_kind)].push_back(tm);
                }
            }
        }
    }
    report.files.push_back(details.path());
    report.files.push_back(demos_csv.path());
    report.files.push_back(posteriors.path());

    // summary.csv: one row per (sampler, inference); table.csv adds theta*
    CsvWriter summary(config.out_dir / "summary.csv",
                      {"config_hash", "sampler", "inference", "cells", "mean_true_match",
                       "mean_true_posterior"});
    for (ModelKind s : samplers)
        for (ModelKind i : kBothKinds) {
            const std::string sampler_name = misspecified ? "less-extended" : to_string(s);
            const auto& tps = tp_pool[pool_key(s, i)];
            const auto& tms = tm_pool[pool_key(s, i)];
            summary.write_row({hash, sampler_name, to_string(i), std::to_string(tps.size()),
                               format_double(mean(tms)), format_double(mean(tps))});
            report.summary["mean_tp_" + to_string(s).substr(0, 1) + to_string(i).substr(0, 1)] =
                mean(tps);
            report.summary["mean_tm_" + to_string(s).substr(0, 1) + to_string(i).substr(0, 1)] =
                mean(tms);
        }
    report.files.push_back(summary.path());

    CsvWriter table(config.out_dir / "table.csv",
                    {"config_hash", "theta_star", "sampler", "inference", "cells",
                     "mean_true_match", "mean_true_posterior"});
    for (std::size_t ti = 0; ti < p.grid.size(); ++ti)
        for (ModelKind s : samplers)
            for (ModelKind i : kBothKinds) {
                const std::string sampler_name = misspecified ? "less-extended" : to_string(s);
                const std::string key = p.grid.labels[ti] + "|" + pool_key(s, i);
                table.write_row({hash, p.grid.labels[ti], sampler_name, to_string(i),
                                 std::to_string(tp_pool[key].size()),
                                 format_double(mean(tm_pool[key])),
                                 format_double(mean(tp_pool[key]))});
            }
    report.files.push_back(table.path());

    if (misspecified) {
        report.summary["mean_tp_inference_boltzmann"] = report.summary["mean_tp_lb"];
        report.summary["mean_tp_inference_less"] = report.summary["mean_tp_ll"];
    }
    return report;
}

}  // namespace

ExperimentReport run_inference_compare(const ExperimentConfig& config) {
    if (config.kind != ExperimentKind::inference_compare)
        throw config_error("run_inference_compare: config kind mismatch");
    return run_factorial(config, false);
}

ExperimentReport run_misspecify(const ExperimentConfig& config) {
    if (config.kind != ExperimentKind::misspecify)
        throw config_error("run_misspecify: config kind mismatch");
    return run_factorial(config, true);
}

namespace {

TrajectorySet subset_by_indices(const TrajectorySet& set, const std::vector<std::size_t>& indices) {
    TrajectorySet out;
    out.feature_set = set.feature_set;
    out.trajectories.reserve(indices.size());
    out.features.reserve(indices.size());
    for (std::size_t idx : indices) {
        out.trajectories.push_back(set.trajectories[idx]);
        out.features.push_back(set.features[idx]);
    }
    return out;
}

}  // namespace

ExperimentReport run_robustness(const ExperimentConfig& config) {
    if (config.kind != ExperimentKind::robustness)
        throw config_error("run_robustness: config kind mismatch");

    ExperimentReport report;
    report.out_dir = config.out_dir;
    report.config_hash_hex = config.hash_hex();
    const std::string hash = report.config_hash_hex;

    Prepared p = prepare(config);
    const std::uint64_t base = config.seeds.front();

    // sizes: default ladder, clipped to the enumerated set with a recorded
    // warning, then de-duplicated
    std::vector<std::size_t> sizes =
        config.sample_sizes.empty() ? std::vector<std::size_t>{10, 30, 100, 300} : config.sample_sizes;
    std::sort(sizes.begin(), sizes.end());
    for (auto& s : sizes) {
        if (s > p.full.size()) {
            report.warnings.push_back("sample size " + std::to_string(s) + " clipped to the enumerated set size " +
                                      std::to_string(p.full.size()));
            s = p.full.size();
        }
        if (s == 0) throw config_error("robustness: sample sizes must be positive");
    }
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";

    write_metadata(config, config.out_dir,
                   {{"world", p.world.to_json()},
                    {"enumerated_size", p.full.size()},
                    {"bandwidth", p.kernel.bandwidth},
                    {"sample_sizes", sizes},
                    {"base_seed", base}},
                   report.warnings, report);

    // the demonstrations: one per index, theta* cycling the grid, drawn from
    // the LESS rule at the configured beta
    struct Demo {
        Trajectory trajectory;
        std::size_t index = 0;
        std::size_t theta_index = 0;
        std::uint64_t stream_seed = 0;
    };
    std::vector<Demo> demos;
    CsvWriter demos_csv(config.out_dir / "demos.csv",
                        {"config_hash", "demo", "theta_star", "stream_seed", "trajectory_index",
                         "moves"});
    for (std::size_t d = 0; d < config.demo_count; ++d) {
        const std::size_t ti = d % p.grid.size();
        const std::uint64_t stream_seed = derive_seed(base, "robustness/demo=" + std::to_string(d));
        const DemonstrationSet ds = sample_demos(p.full, p.grid.candidates[ti], config.beta,
                                                 ModelKind::less, p.kernel, 1, stream_seed);
        demos.push_back({ds.demos[0], ds.indices[0], ti, stream_seed});
        demos_csv.write_row({hash, std::to_string(d), p.grid.labels[ti], u64_hex(stream_seed),
                             std::to_string(ds.indices[0]), ds.demos[0].moves()});
    }
    report.files.push_back(demos_csv.path());

    const Belief prior = uniform_belief(p.grid);

    CsvWriter kl_csv(config.out_dir / "kl.csv",
                     {"config_hash", "variant", "method", "size", "demo", "theta_star",
                      "kl_aggregate"});
    const std::filesystem::path post_dir = config.out_dir / "posteriors";

    // single-demo variant: per (size, method, demo), 10 forced-include
    // subsamples -> 10 posteriors -> one KLAggregate.  subsample seeds do not
    // depend on the method, so both methods see identical subsamples.
    for (std::size_t size : sizes) {
        for (ModelKind method : kBothKinds) {
            CsvWriter post_csv(post_dir / ("single_" + to_string(method) + "_S" + std::to_string(size) + ".csv"),
                               {"config_hash", "demo", "set_index", "theta_label", "prior",
                                "posterior"});
            std::vector<double> per_demo_kl;
            for (std::size_t d = 0; d < demos.size(); ++d) {
                PosteriorCollection collection;
                for (std::size_t rep = 0; rep < config.subsample_count; ++rep) {
                    const std::uint64_t sub_seed =
                        derive_seed(base, "robustness/single/size=" + std::to_string(size) +
                                              "/demo=" + std::to_string(d) + "/rep=" + std::to_string(rep));
                    const TrajectorySet sub =
                        subsample(p.full, size, sub_seed, demos[d].trajectory);
                    const Belief post = update(prior, p.grid, demos[d].trajectory, sub, method,
                                               p.kernel, config.beta);
                    for (std::size_t g = 0; g < p.grid.size(); ++g)
                        post_csv.write_row({hash, std::to_string(d), std::to_string(rep),
                                            p.grid.labels[g], format_double(prior.probs[g]),
                                            format_double(post.probs[g])});
                    collection.posteriors.push_back(post);
                    collection.provenance.push_back("demo=" + std::to_string(d) +
                                                    "/rep=" + std::to_string(rep));
                }
                const double kl = kl_aggregate(collection);
                per_demo_kl.push_back(kl);
                kl_csv.write_row({hash, "single", to_string(method), std::to_string(size),
                                  std::to_string(d), p.grid.labels[demos[d].theta_index],
                                  format_double(kl)});
            }
            report.files.push_back(post_csv.path());
            report.summary["single_kl_" + to_string(method) + "_S" + std::to_string(size)] =
                mean(per_demo_kl);
        }
    }

    // batch variant: pool every demonstration into one joint posterior per
    // subsample (the subsample is unioned with all demo indices so the
    // evidence is always in-support)
    std::vector<std::size_t> demo_indices;
    for (const auto& d : demos) demo_indices.push_back(d.index);
    std::vector<Trajectory> demo_trajectories;
    for (const auto& d : demos) demo_trajectories.push_back(d.trajectory);

    for (std::size_t size : sizes) {
        for (ModelKind method : kBothKinds) {
            CsvWriter post_csv(post_dir / ("batch_" + to_string(method) + "_S" + std::to_string(size) + ".csv"),
                               {"config_hash", "set_index", "theta_label", "prior", "posterior"});
            PosteriorCollection collection;
            for (std::size_t rep = 0; rep < config.subsample_count; ++rep) {
                const std::uint64_t sub_seed =
                    derive_seed(base, "robustness/batch/size=" + std::to_string(size) +
                                          "/rep=" + std::to_string(rep));
                SeedStream stream(sub_seed);
                std::vector<std::size_t> indices =
                    stream.sample_without_replacement(p.full.size(), size);
                indices.insert(indices.end(), demo_indices.begin(), demo_indices.end());
                std::sort(indices.begin(), indices.end());
                indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
                const TrajectorySet sub = subset_by_indices(p.full, indices);

                const Belief post = batch_update(prior, p.grid, demo_trajectories, sub, method,
                                                 p.kernel, config.beta);
                for (std::size_t g = 0; g < p.grid.size(); ++g)
                    post_csv.write_row({hash, std::to_string(rep), p.grid.labels[g],
                                        format_double(prior.probs[g]),
                                        format_double(post.probs[g])});
                collection.posteriors.push_back(post);
                collection.provenance.push_back("rep=" + std::to_string(rep));
            }
            const double kl = kl_aggregate(collection);
            kl_csv.write_row({hash, "batch", to_string(method), std::to_string(size), "all", "",
                              format_double(kl)});
            report.files.push_back(post_csv.path());
            report.summary["batch_kl_" + to_string(method) + "_S" + std::to_string(size)] = kl;
        }
    }
    report.files.push_back(kl_csv.path());

    CsvWriter summary(config.out_dir / "summary.csv",
                      {"config_hash", "variant", "method", "size", "mean_kl_aggregate"});
    for (std::size_t size : sizes)
        for (ModelKind method : kBothKinds)
            summary.write_row({hash, "single", to_string(method), std::to_string(size),
                               format_double(report.summary["single_kl_" + to_string(method) +
                                                            "_S" + std::to_string(size)])});
    for (std::size_t size : sizes)
        for (ModelKind method : kBothKinds)
            summary.write_row({hash, "batch", to_string(method), std::to_string(size),
                               format_double(report.summary["batch_kl_" + to_string(method) +
                                                            "_S" + std::to_string(size)])});
    report.files.push_back(summary.path());

    report.summary["smallest_size"] = static_cast<double>(sizes.front());
    report.summary["largest_size"] = static_cast<double>(sizes.back());
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    switch (config.kind) {
        case ExperimentKind::turk_predict: return run_turk_predict_report(config);
        case ExperimentKind::inference_compare: return run_inference_compare(config);
        case ExperimentKind::misspecify: return run_misspecify(config);
        case ExperimentKind::robustness: return run_robustness(config);
    }
    throw config_error("run_experiment: unknown kind");
}

}  // namespace lessinfer
