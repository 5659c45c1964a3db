#include "lessinfer/config.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "lessinfer/csv.hpp"
#include "lessinfer/rng.hpp"

namespace lessinfer {

ExperimentKind experiment_kind_from_string(const std::string& name) {
    if (name == "turk-predict") return ExperimentKind::turk_predict;
    if (name == "inference-compare") return ExperimentKind::inference_compare;
    if (name == "misspecify") return ExperimentKind::misspecify;
    if (name == "robustness") return ExperimentKind::robustness;
    throw config_error("unknown experiment kind '" + name + "'");
}

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::turk_predict: return "turk-predict";
        case ExperimentKind::inference_compare: return "inference-compare";
        case ExperimentKind::misspecify: return "misspecify";
        case ExperimentKind::robustness: return "robustness";
    }
    return "?";
}

std::string ExperimentConfig::hash_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(config_hash));
    return buf;
}

namespace {

// "a.b.c=value" -> json[a][b][c] = parse(value); bare words become strings
void apply_override(nlohmann::json& j, const std::string& entry) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("override '" + entry + "': expected key=value");
    const std::string key = entry.substr(0, eq);
    const std::string value = entry.substr(eq + 1);

    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(value);
    } catch (const nlohmann::json::exception&) {
        parsed = value;  // not valid JSON: treat as a string
    }

    nlohmann::json* node = &j;
    std::size_t pos = 0;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string part = key.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (part.empty()) throw config_error("override '" + entry + "': empty key segment");
        if (dot == std::string::npos) {
            (*node)[part] = parsed;
            break;
        }
        node = &(*node)[part];
        if (!node->is_object() && !node->is_null())
            throw config_error("override '" + entry + "': '" + part + "' is not an object");
        pos = dot + 1;
    }
}

std::vector<std::uint64_t> parse_seeds(const nlohmann::json& j) {
    std::vector<std::uint64_t> out;
    if (j.is_number_integer()) {
        const long long n = j.get<long long>();
        if (n < 1) throw config_error("seeds: count must be positive");
        out.reserve(static_cast<std::size_t>(n));
        for (long long s = 0; s < n; ++s) out.push_back(static_cast<std::uint64_t>(s));
    } else if (j.is_array()) {
        for (const auto& e : j) {
            if (!e.is_number_integer()) throw config_error("seeds: list entries must be integers");
            out.push_back(e.get<std::uint64_t>());
        }
    } else {
        throw config_error("seeds: expected an integer count or a list of seeds");
    }
    if (out.empty()) throw config_error("seeds: list must be nonempty");
    return out;
}

BandwidthSearch parse_bandwidth(const nlohmann::json& j) {
    BandwidthSearch search;
    if (j.is_null()) return search;
    if (!j.is_object()) throw config_error("bandwidth: expected an object");
    if (j.contains("fixed")) {
        search.fixed = j["fixed"].get<double>();
        if (!(*search.fixed > 0) || !std::isfinite(*search.fixed))
            throw config_error("bandwidth.fixed: must be positive and finite");
        return search;
    }
    search.min_sigma = j.value("min", search.min_sigma);
    search.max_sigma = j.value("max", search.max_sigma);
    search.grid_size = j.value("grid_size", search.grid_size);
    if (!(search.min_sigma > 0) || !(search.max_sigma >= search.min_sigma) || search.grid_size < 1)
        throw config_error("bandwidth: need 0 < min <= max and grid_size >= 1");
    return search;
}

std::optional<ThetaGrid> parse_theta_grid(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_object()) throw config_error("theta_grid: expected an object");
    const std::string kind = j.value("kind", "signs");
    if (kind == "signs") return std::nullopt;  // resolved later against the feature dim
    if (kind != "explicit") throw config_error("theta_grid.kind: expected 'signs' or 'explicit'");
    ThetaGrid grid;
    for (const auto& c : j.at("candidates"))
        grid.candidates.push_back(c.get<std::vector<double>>());
    if (j.contains("labels")) {
        for (const auto& l : j.at("labels")) grid.labels.push_back(l.get<std::string>());
    } else {
        for (const auto& c : grid.candidates) {
            std::string label = "w(";
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i) label += ",";
                label += format_double(c[i]);
            }
            label += ")";
            grid.labels.push_back(label);
        }
    }
    grid.validate();
    return grid;
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& file,
                                        const std::vector<std::string>& overrides,
                                        const std::optional<std::filesystem::path>& cli_out,
                                        const std::optional<std::uint64_t>& cli_seeds) {
    std::ifstream in(file);
    if (!in) throw config_error("config: cannot open '" + file.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("config '" + file.string() + "': " + e.what());
    }
    if (!j.is_object()) throw config_error("config: expected a JSON object");

    for (const auto& o : overrides) apply_override(j, o);
    if (cli_seeds) j["seeds"] = *cli_seeds;
    if (cli_out) j["out_dir"] = cli_out->string();

    ExperimentConfig cfg;
    // canonical form: nlohmann objects iterate in sorted key order, so a
    // compact dump is a stable fingerprint of what will run
    cfg.canonical_text = j.dump();
    cfg.config_hash = fnv1a64(cfg.canonical_text);

    try {
        if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
            throw config_error("config: missing integer schema_version");
        cfg.schema_version = j["schema_version"].get<int>();
        if (cfg.schema_version != 1)
            throw config_error("config: unsupported schema_version (expected 1)");

        cfg.kind = experiment_kind_from_string(j.at("experiment").get<std::string>());

        if (j.contains("world")) {
            std::filesystem::path w = j["world"].get<std::string>();
            cfg.world_file = w.is_absolute() ? w : file.parent_path() / w;
        }
        cfg.max_length = j.value("max_length", cfg.max_length);
        cfg.beta = j.value("beta", cfg.beta);
        cfg.bandwidth = parse_bandwidth(j.contains("bandwidth") ? j["bandwidth"] : nlohmann::json());
        cfg.theta_grid = parse_theta_grid(j.contains("theta_grid") ? j["theta_grid"] : nlohmann::json());
        cfg.seeds = j.contains("seeds") ? parse_seeds(j["seeds"]) : std::vector<std::uint64_t>{0};
        cfg.demo_count = j.value("demo_count", cfg.demo_count);
        if (j.contains("sample_sizes"))
            cfg.sample_sizes = j["sample_sizes"].get<std::vector<std::size_t>>();
        cfg.subsample_count = j.value("subsamples", cfg.subsample_count);
        cfg.lambda = j.value("lambda", cfg.lambda);
        if (j.contains("extra_features"))
            cfg.extra_features = j["extra_features"].get<std::vector<std::string>>();
        cfg.out_dir = j.value("out_dir", std::string("out/") + to_string(cfg.kind));
    } catch (const nlohmann::json::exception& e) {
        throw config_error("config '" + file.string() + "': " + e.what());
    }

    cfg.validate();
    return cfg;
}

void ExperimentConfig::validate() const {
    if (seeds.empty()) throw config_error("config: seeds must be nonempty");
    if (!(beta >= 0) || !std::isfinite(beta))
        throw config_error("config: beta must be nonnegative and finite");
    if (out_dir.empty()) throw config_error("config: out_dir must be set");

    const bool needs_world = kind != ExperimentKind::turk_predict;
    if (needs_world) {
        if (world_file.empty()) throw config_error("config: world file required");
        if (!std::filesystem::exists(world_file))
            throw config_error("config: world file '" + world_file.string() + "' does not exist");
        if (max_length == 0) throw config_error("config: max_length must be positive");
        if (demo_count == 0) throw config_error("config: demo_count must be positive");
    }
    if (kind == ExperimentKind::turk_predict) {
        if (!(lambda > 0) || !std::isfinite(lambda))
            throw config_error("config: lambda must be positive and finite");
    }
    if (kind == ExperimentKind::robustness) {
        if (subsample_count < 2)
            throw config_error("config: robustness needs at least two subsamples per size");
    }
}

}  // namespace lessinfer
