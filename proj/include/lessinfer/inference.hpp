#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lessinfer/models.hpp"

namespace lessinfer {

// Discrete hypothesis space of reward parameter vectors.
struct ThetaGrid {
    std::vector<std::vector<double>> candidates;
    std::vector<std::string> labels;  // parallel display names

    std::size_t size() const { return candidates.size(); }
    void validate() const;  // nonempty, equal dims, distinct, labels parallel

    // All vectors over components {-1, 0, 1}^dim minus the zero vector, in
    // lexicographic order, labeled by their components ("w(-1,0)" etc).
    static ThetaGrid signs(std::size_t dim);
};

// Normalized probability vector over a ThetaGrid.
struct Belief {
    std::vector<double> probs;
};

Belief uniform_belief(const ThetaGrid& grid);

// Probability the chosen model assigns to `demo` within `set` under
// RewardModel(theta, beta).  The demo must be a member of the set; the rules
// assign zero mass outside it.  kernel is required iff kind == less.
double likelihood(const Trajectory& demo, const TrajectorySet& set,
                  const std::vector<double>& theta, ModelKind kind,
                  const std::optional<Kernel>& kernel, double beta);

// One Bayes step: posterior(theta_i) ~ belief(theta_i) * likelihood(demo |
// theta_i), over the grid's candidates.  Log-space arithmetic with one final
// normalization; throws numerical_error when the total unnormalized mass
// falls below 1e-300.
Belief update(const Belief& belief, const ThetaGrid& grid, const Trajectory& demo,
              const TrajectorySet& set, ModelKind kind,
              const std::optional<Kernel>& kernel, double beta);

// Fold of update over the demos (order-invariant up to rounding); the
// per-theta model distribution is computed once and reused across demos.
Belief batch_update(const Belief& belief, const ThetaGrid& grid,
                    const std::vector<Trajectory>& demos, const TrajectorySet& set,
                    ModelKind kind, const std::optional<Kernel>& kernel, double beta);

// Behavior prediction by marginalization: the belief-weighted mixture of the
// model's per-theta choice distributions.
ChoiceDistribution predict(const Belief& belief, const ThetaGrid& grid,
                           const TrajectorySet& set, ModelKind kind,
                           const std::optional<Kernel>& kernel, double beta);

// Smallest index attaining the maximum posterior mass.
std::size_t map_theta(const Belief& belief);

namespace detail {
// log p(demo_index | theta) for each theta candidate; shared by update,
// batch_update and the harness.
std::vector<double> log_likelihood_grid(std::size_t demo_index, const TrajectorySet& set,
                                        const ThetaGrid& grid, ModelKind kind,
                                        const std::optional<Kernel>& kernel, double beta);
}  // namespace detail

}  // namespace lessinfer
