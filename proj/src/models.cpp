#include "lessinfer/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lessinfer {

void RewardModel::validate() const {
    if (!(beta >= 0) || !std::isfinite(beta))
        throw argument_error("reward model: beta must be nonnegative and finite");
    for (double t : theta)
        if (!std::isfinite(t)) throw argument_error("reward model: theta must be finite");
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "boltzmann") return ModelKind::boltzmann;
    if (name == "less") return ModelKind::less;
    throw config_error("unknown model kind '" + name + "' (expected boltzmann or less)");
}

std::string to_string(ModelKind kind) {
    return kind == ModelKind::boltzmann ? "boltzmann" : "less";
}

double reward(const FeatureVector& phi, const RewardModel& model) {
    model.validate();
    if (phi.size() != model.theta.size())
        throw argument_error("reward: feature/theta dimension mismatch");
    double dot = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) dot += model.theta[i] * phi[i];
    return model.beta * dot;
}

namespace detail {

ChoiceDistribution normalize_log_weights(std::vector<double> logw) {
    // max-shift before exponentiation so any finite log-weight survives
    const double m = *std::max_element(logw.begin(), logw.end());
    double total = 0;
    for (double& w : logw) {
        w = std::exp(w - m);
        total += w;
    }
    for (double& w : logw) w /= total;
    return ChoiceDistribution{std::move(logw)};
}

std::vector<double> log_weights_boltzmann(const TrajectorySet& set, const RewardModel& model) {
    set.require_features();
    std::vector<double> logw(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) logw[i] = reward(set.features[i], model);
    return logw;
}

std::vector<double> log_weights_less(const TrajectorySet& set, const RewardModel& model,
                                     const Kernel& kernel) {
    std::vector<double> logw = log_weights_boltzmann(set, model);
    const std::vector<double> dens = density(set, kernel);
    for (std::size_t i = 0; i < set.size(); ++i) logw[i] -= std::log(dens[i]);
    return logw;
}

}  // namespace detail

ChoiceDistribution boltzmann(const TrajectorySet& set, const RewardModel& model) {
    return detail::normalize_log_weights(detail::log_weights_boltzmann(set, model));
}

ChoiceDistribution less_rule(const TrajectorySet& set, const RewardModel& model,
                             const Kernel& kernel) {
    return detail::normalize_log_weights(detail::log_weights_less(set, model, kernel));
}

ChoiceDistribution attribute_rule(const TrajectorySet& set, const RewardModel& model) {
    set.require_features();
    const std::size_t n = set.size();

    // group options by exactly-equal feature vectors, keeping first-seen order
    std::map<FeatureVector, std::size_t> group_of;
    std::vector<std::vector<std::size_t>> groups;
    std::vector<double> group_logw;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = group_of.try_emplace(set.features[i], groups.size());
        if (inserted) {
            groups.push_back({});
            group_logw.push_back(reward(set.features[i], model));
        }
        groups[it->second].push_back(i);
    }

    const ChoiceDistribution over_groups = detail::normalize_log_weights(std::move(group_logw));

    ChoiceDistribution out;
    out.probs.assign(n, 0.0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double share = over_groups.probs[g] / static_cast<double>(groups[g].size());
        for (std::size_t i : groups[g]) out.probs[i] = share;
    }
    return out;
}

}  // namespace lessinfer
