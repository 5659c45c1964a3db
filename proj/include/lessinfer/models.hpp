#pragma once

#include <string>
#include <vector>

#include "lessinfer/kernel.hpp"
#include "lessinfer/trajectory_set.hpp"

namespace lessinfer {

// Linear reward over features scaled by a rationality coefficient:
// R(phi) = beta * (theta . phi).  beta = 0 is a uniformly random agent.
struct RewardModel {
    std::vector<double> theta;
    double beta = 1.0;

    void validate() const;  // beta >= 0 and finite, theta finite
};

// Which choice rule an operation should use.
enum class ModelKind { boltzmann, less };

ModelKind model_kind_from_string(const std::string& name);
std::string to_string(ModelKind kind);

// Normalized probability vector over a TrajectorySet.
struct ChoiceDistribution {
    std::vector<double> probs;
};

double reward(const FeatureVector& phi, const RewardModel& model);

// p(i) proportional to exp(R(phi_i)); computed with a max-shifted exponent so
// arbitrarily large |R| stays finite.
ChoiceDistribution boltzmann(const TrajectorySet& set, const RewardModel& model);

// p(i) proportional to exp(R(phi_i)) / density(i): exponentiated reward
// discounted by how crowded the option's feature-space neighborhood is, so a
// cluster of near-duplicates shares what a lone equivalent option would get.
ChoiceDistribution less_rule(const TrajectorySet& set, const RewardModel& model,
                             const Kernel& kernel);

// Reference duplicate-handling rule: group options by exactly-equal feature
// vectors, give each group probability proportional to exp(R) of its shared
// features, split the group's mass uniformly among members.  Identical to
// boltzmann when all feature vectors are distinct.
ChoiceDistribution attribute_rule(const TrajectorySet& set, const RewardModel& model);

namespace detail {
// Unnormalized log-weights behind the rules; exposed so property tests can
// check shift invariance and the large-bandwidth limit at the log level.
std::vector<double> log_weights_boltzmann(const TrajectorySet& set, const RewardModel& model);
std::vector<double> log_weights_less(const TrajectorySet& set, const RewardModel& model,
                                     const Kernel& kernel);
// exp-normalize with max shift; sums to 1.
ChoiceDistribution normalize_log_weights(std::vector<double> logw);
}  // namespace detail

}  // namespace lessinfer
