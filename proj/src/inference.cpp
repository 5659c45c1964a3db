#include "lessinfer/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace lessinfer {

void ThetaGrid::validate() const {
    if (candidates.empty()) throw config_error("theta grid: must be nonempty");
    if (labels.size() != candidates.size())
        throw config_error("theta grid: labels must parallel candidates");
    const std::size_t dim = candidates.front().size();
    std::set<std::vector<double>> seen;
    for (const auto& c : candidates) {
        if (c.size() != dim) throw config_error("theta grid: mixed candidate dimensions");
        if (!seen.insert(c).second) throw config_error("theta grid: duplicate candidate");
    }
}

ThetaGrid ThetaGrid::signs(std::size_t dim) {
    if (dim == 0) throw argument_error("theta grid: dimension must be positive");
    ThetaGrid grid;
    const std::size_t count = 1;
    std::size_t total = count;
    for (std::size_t i = 0; i < dim; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<double> theta(dim);
        std::size_t rest = code;
        bool all_zero = true;
        // most-significant digit first so the order is lexicographic
        for (std::size_t i = 0; i < dim; ++i) {
            std::size_t place = 1;
            for (std::size_t j = i + 1; j < dim; ++j) place *= 3;
            const int digit = static_cast<int>(rest / place) - 1;  // -1, 0, 1
            rest %= place;
            theta[i] = digit;
            if (digit != 0) all_zero = false;
        }
        if (all_zero) continue;
        std::string label = "w(";
        for (std::size_t i = 0; i < dim; ++i) {
            if (i) label += ",";
            label += std::to_string(static_cast<int>(theta[i]));
        }
        label += ")";
        grid.candidates.push_back(std::move(theta));
        grid.labels.push_back(std::move(label));
    }
    return grid;
}

Belief uniform_belief(const ThetaGrid& grid) {
    grid.validate();
    return Belief{std::vector<double>(grid.size(), 1.0 / static_cast<double>(grid.size()))};
}

namespace {

void check_kernel(ModelKind kind, const std::optional<Kernel>& kernel) {
    if (kind == ModelKind::less && !kernel)
        throw config_error("inference: the less model needs a kernel");
}

std::size_t require_member(const Trajectory& demo, const TrajectorySet& set) {
    const auto idx = find_trajectory(set, demo);
    if (!idx) throw argument_error("inference: demonstration is not a member of the set");
    return *idx;
}

ChoiceDistribution model_distribution(const TrajectorySet& set, const RewardModel& model,
                                      ModelKind kind, const std::optional<Kernel>& kernel) {
    return kind == ModelKind::less ? less_rule(set, model, *kernel) : boltzmann(set, model);
}

constexpr double kMinMass = 1e-300;  // unnormalized-posterior underflow guard

Belief belief_from_log_mass(std::vector<double> log_mass) {
    const double m = *std::max_element(log_mass.begin(), log_mass.end());
    if (!std::isfinite(m))
        throw numerical_error("update: posterior mass vanished (all log-masses -inf)");
    double total = 0;
    for (double& v : log_mass) {
        v = std::exp(v - m);
        total += v;
    }
    // total unnormalized mass in linear units is exp(m)*total
    if (m + std::log(total) < std::log(kMinMass))
        throw numerical_error("update: total unnormalized posterior mass below 1e-300");
    for (double& v : log_mass) v /= total;
    return Belief{std::move(log_mass)};
}

}  // namespace

namespace detail {

std::vector<double> log_likelihood_grid(std::size_t demo_index, const TrajectorySet& set,
                                        const ThetaGrid& grid, ModelKind kind,
                                        const std::optional<Kernel>& kernel, double beta) {
    check_kernel(kind, kernel);
    set.require_features();
    // the density tilt is theta-independent; compute it once
    std::optional<std::vector<double>> log_dens;
    if (kind == ModelKind::less) {
        log_dens.emplace(density(set, *kernel));
        for (double& d : *log_dens) d = std::log(d);
    }
    std::vector<double> out(grid.size());
    for (std::size_t t = 0; t < grid.size(); ++t) {
        const RewardModel model{grid.candidates[t], beta};
        std::vector<double> logw(set.size());
        for (std::size_t i = 0; i < set.size(); ++i) {
            logw[i] = reward(set.features[i], model);
            if (log_dens) logw[i] -= (*log_dens)[i];
        }
        const double m = *std::max_element(logw.begin(), logw.end());
        double total = 0;
        for (double w : logw) total += std::exp(w - m);
        out[t] = (logw[demo_index] - m) - std::log(total);
    }
    return out;
}

}  // namespace detail

double likelihood(const Trajectory& demo, const TrajectorySet& set,
                  const std::vector<double>& theta, ModelKind kind,
                  const std::optional<Kernel>& kernel, double beta) {
    check_kernel(kind, kernel);
    const std::size_t idx = require_member(demo, set);
    const RewardModel model{theta, beta};
    const ChoiceDistribution dist = model_distribution(set, model, kind, kernel);
    return dist.probs[idx];
}

Belief update(const Belief& belief, const ThetaGrid& grid, const Trajectory& demo,
              const TrajectorySet& set, ModelKind kind,
              const std::optional<Kernel>& kernel, double beta) {
    return batch_update(belief, grid, {demo}, set, kind, kernel, beta);
}

Belief batch_update(const Belief& belief, const ThetaGrid& grid,
                    const std::vector<Trajectory>& demos, const TrajectorySet& set,
                    ModelKind kind, const std::optional<Kernel>& kernel, double beta) {
    grid.validate();
    if (belief.probs.size() != grid.size())
        throw argument_error("update: belief does not match the theta grid");
    if (demos.empty()) return belief;
    check_kernel(kind, kernel);

    std::vector<std::size_t> demo_indices;
    demo_indices.reserve(demos.size());
    for (const auto& d : demos) demo_indices.push_back(require_member(d, set));

    // log-space accumulation over the prior and every demo's log-likelihood,
    // normalized exactly once at the end
    std::vector<double> log_mass(grid.size());
    for (std::size_t t = 0; t < grid.size(); ++t)
        log_mass[t] = belief.probs[t] > 0 ? std::log(belief.probs[t])
                                          : -std::numeric_limits<double>::infinity();

    // per-theta log-distributions are demo-independent: compute each theta's
    // normalizer once and read off every demo's log-probability
    std::optional<std::vector<double>> log_dens;
    if (kind == ModelKind::less) {
        log_dens.emplace(density(set, *kernel));
        for (double& d : *log_dens) d = std::log(d);
    }
    for (std::size_t t = 0; t < grid.size(); ++t) {
        const RewardModel model{grid.candidates[t], beta};
        std::vector<double> logw(set.size());
        for (std::size_t i = 0; i < set.size(); ++i) {
            logw[i] = reward(set.features[i], model);
            if (log_dens) logw[i] -= (*log_dens)[i];
        }
        const double m = *std::max_element(logw.begin(), logw.end());
        double total = 0;
        for (double w : logw) total += std::exp(w - m);
        const double log_z = m + std::log(total);
        for (std::size_t di : demo_indices) log_mass[t] += logw[di] - log_z;
    }

    return belief_from_log_mass(std::move(log_mass));
}

ChoiceDistribution predict(const Belief& belief, const ThetaGrid& grid,
                           const TrajectorySet& set, ModelKind kind,
                           const std::optional<Kernel>& kernel, double beta) {
    grid.validate();
    if (belief.probs.size() != grid.size())
        throw argument_error("predict: belief does not match the theta grid");
    check_kernel(kind, kernel);
    set.require_features();

    ChoiceDistribution out;
    out.probs.assign(set.size(), 0.0);
    for (std::size_t t = 0; t < grid.size(); ++t) {
        if (belief.probs[t] == 0) continue;
        const RewardModel model{grid.candidates[t], beta};
        const ChoiceDistribution dist = model_distribution(set, model, kind, kernel);
        for (std::size_t i = 0; i < set.size(); ++i)
            out.probs[i] += belief.probs[t] * dist.probs[i];
    }
    return out;
}

std::size_t map_theta(const Belief& belief) {
    if (belief.probs.empty()) throw argument_error("map_theta: empty belief");
    std::size_t best = 0;
    for (std::size_t i = 1; i < belief.probs.size(); ++i)
        if (belief.probs[i] > belief.probs[best]) best = i;  // strict: lowest index wins ties
    return best;
}

}  // namespace lessinfer
