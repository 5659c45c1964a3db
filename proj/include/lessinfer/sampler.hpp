#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lessinfer/inference.hpp"

namespace lessinfer {

// Simulated demonstrations: i.i.d. draws (with replacement) from a decision
// model at a fixed ground-truth reward.  Bit-identical under regeneration
// with the same inputs.
struct DemonstrationSet {
    std::vector<Trajectory> demos;
    std::vector<std::size_t> indices;  // positions of demos in the source set
    std::vector<double> ground_truth;  // theta*
    double beta = 1.0;
    ModelKind kind = ModelKind::boltzmann;
    std::uint64_t seed = 0;
};

// n draws from the chosen model's distribution over `set` by inverse-CDF on
// the canonical order: walk the cumulative sums until they exceed a 53-bit
// uniform draw.  kernel is required iff kind == less.
DemonstrationSet sample_demos(const TrajectorySet& set, const std::vector<double>& theta_star,
                              double beta, ModelKind kind, const std::optional<Kernel>& kernel,
                              std::size_t n, std::uint64_t seed);

// Draws from a LESS distribution whose density lives in an EXTENDED feature
// space while the reward sees only the original dimensions (extra theta
// components fixed at 0).  Models a demonstrator influenced by attributes the
// inference side will not know about.  The returned demos are plain
// trajectories, so inference can recompute its own reduced features.
//
// `extended` must start with set.feature_set's descriptors (so theta
// zero-padding aligns) and must contain mean-x and mean-y; otherwise
// config_error.  When `kernel` is absent the bandwidth is re-selected by
// leave-one-out likelihood on the extended feature space.
DemonstrationSet sample_demos_misspecified(const TrajectorySet& set, const GridWorld& world,
                                           const FeatureSet& extended,
                                           const std::vector<double>& theta_star, double beta,
                                           const std::optional<Kernel>& kernel, std::size_t n,
                                           std::uint64_t seed);

namespace detail {
// Inverse-CDF draw helper shared with tests.
std::size_t draw_index(const ChoiceDistribution& dist, double u);
}  // namespace detail

}  // namespace lessinfer
