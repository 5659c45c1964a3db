#include <chrono>
#include <map>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lessinfer/csv.hpp"
#include "lessinfer/experiments.hpp"
#include "lessinfer/rng.hpp"

namespace {

using namespace lessinfer;

void print_turk(const TurkPrediction& pred) {
    const char* labels[4] = {"left", "right-1", "right-2", "right-3"};
    std::cout << "model,option_index,option_label,probability\n";
    for (const auto& [name, probs] :
         {std::pair{std::string("boltzmann"), pred.boltzmann_probs},
          std::pair{std::string("less"), pred.less_probs}}) {
        for (std::size_t i = 0; i < probs.size(); ++i)
            std::cout << name << ',' << i << ',' << labels[i] << ','
                      << format_double(probs[i]) << "\n";
    }
}

// config equivalent of `predict-turk --lambda X --out DIR`, so the direct
// form writes the same files with a valid recorded hash
ExperimentConfig synthetic_turk_config(double lambda, const std::filesystem::path& out) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["experiment"] = "turk-predict";
    j["lambda"] = lambda;
    j["out_dir"] = out.string();
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::turk_predict;
    cfg.lambda = lambda;
    cfg.out_dir = out;
    cfg.canonical_text = j.dump();
    cfg.config_hash = fnv1a64(cfg.canonical_text);
    cfg.validate();
    return cfg;
}

int run_config_experiment(const std::string& kind_name, const std::string& config_path,
                          const std::vector<std::string>& overrides,
                          const std::optional<std::uint64_t>& seeds,
                          const std::optional<std::string>& out) {
    std::optional<std::filesystem::path> out_path;
    if (out) out_path = *out;
    const ExperimentConfig cfg = ExperimentConfig::load(config_path, overrides, out_path, seeds);
    if (to_string(cfg.kind) != kind_name)
        throw config_error("config is for '" + to_string(cfg.kind) + "', not '" + kind_name + "'");

    const auto start = std::chrono::steady_clock::now();
    const ExperimentReport report = run_experiment(cfg);
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

    std::cout << "experiment: " << kind_name << "\n";
    std::cout << "config_hash: " << report.config_hash_hex << "\n";
    std::cout << "out_dir: " << report.out_dir.string() << "\n";
    for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
    for (const auto& [key, value] : report.summary)
        std::cout << key << ": " << format_double(value) << "\n";
    // wall time goes to the console only; files stay byte-identical across reruns
    std::cout << "wall_time_ms: " << elapsed.count() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grid-world decision models and reward inference experiments"};
    app.require_subcommand(1);

    // predict-turk --lambda X [--out DIR]
    double lambda = 1.0;
    std::string turk_out;
    auto* predict = app.add_subcommand("predict-turk",
                                       "closed-form left/right predictions for a control ratio");
    predict->add_option("--lambda", lambda, "exp-reward ratio left:right")->required();
    predict->add_option("--out", turk_out, "also write predictions.csv under this directory");

    // enumerate --world PATH --max-len L [--out FILE]
    std::string world_path, enum_out;
    std::size_t max_len = 0;
    auto* enumerate = app.add_subcommand("enumerate", "list all start-to-goal paths of a world");
    enumerate->add_option("--world", world_path, "world JSON file")->required();
    enumerate->add_option("--max-len", max_len, "maximum number of moves")->required();
    enumerate->add_option("--out", enum_out, "write CSV here instead of stdout");

    // <experiment-kind> --config PATH [--seeds N] [--out DIR] [--override k=v]
    struct KindArgs {
        std::string config;
        std::optional<std::uint64_t> seeds;
        std::optional<std::string> out;
        std::vector<std::string> overrides;
    };
    std::map<std::string, KindArgs> kind_args;
    for (const char* kind : {"turk-predict", "inference-compare", "misspecify", "robustness"}) {
        auto* sub = app.add_subcommand(kind, std::string("run the ") + kind + " experiment");
        auto& args = kind_args[kind];
        sub->add_option("--config", args.config, "experiment config JSON")->required();
        sub->add_option("--seeds", [&args](const std::vector<std::string>& v) {
            args.seeds = std::stoull(v.back());
            return true;
        }, "override the seed count (expands to seeds 0..N-1)");
        sub->add_option("--out", [&args](const std::vector<std::string>& v) {
            args.out = v.back();
            return true;
        }, "override the output directory");
        sub->add_option("--override", args.overrides, "dotted-path config override key=value")
            ->take_all();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage problems share the configuration exit code
    }

    try {
        if (predict->parsed()) {
            const TurkPrediction pred = lessinfer::run_turk_predict(lambda);
            print_turk(pred);
            if (!turk_out.empty())
                lessinfer::run_turk_predict_report(synthetic_turk_config(lambda, turk_out));
            return 0;
        }
        if (enumerate->parsed()) {
            const GridWorld world = GridWorld::load(world_path);
            TrajectorySet set = enumerate_trajectories(world, max_len);
            const bool featured = !world.features.descriptors.empty();
            if (featured) set = compute_features(std::move(set), world, world.features);

            std::vector<std::string> header = {"id", "moves"};
            for (const auto& name : world.features.names()) header.push_back(name);
            auto row_of = [&](std::size_t i) {
                std::vector<std::string> row = {std::to_string(i), set.trajectories[i].moves()};
                if (featured)
                    for (double v : set.features[i]) row.push_back(format_double(v));
                return row;
            };
            if (enum_out.empty()) {
                for (std::size_t c = 0; c < header.size(); ++c)
                    std::cout << (c ? "," : "") << csv_escape(header[c]);
                std::cout << "\n";
                for (std::size_t i = 0; i < set.size(); ++i) {
                    const auto row = row_of(i);
                    for (std::size_t c = 0; c < row.size(); ++c)
                        std::cout << (c ? "," : "") << csv_escape(row[c]);
                    std::cout << "\n";
                }
            } else {
                CsvWriter csv(enum_out, header);
                for (std::size_t i = 0; i < set.size(); ++i) csv.write_row(row_of(i));
            }
            return 0;
        }
        for (auto& [kind, args] : kind_args)
            if (app.get_subcommand(kind)->parsed())
                return run_config_experiment(kind, args.config, args.overrides, args.seeds,
                                             args.out);
        throw config_error("no subcommand given");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return lessinfer::exit_code_for(e);
    }
    return 0;
}
