#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lessinfer/trajectory.hpp"

namespace lessinfer {

using FeatureVector = std::vector<double>;

// An ordered finite set of trajectories with (optionally) a parallel list of
// feature vectors.  Order is deterministic: canonical enumeration order, or
// the seeded order a subsample preserves.
struct TrajectorySet {
    std::vector<Trajectory> trajectories;
    std::vector<FeatureVector> features;  // empty until compute_features
    FeatureSet feature_set;               // descriptors behind `features`

    std::size_t size() const { return trajectories.size(); }
    bool featured() const { return features.size() == trajectories.size() && !trajectories.empty(); }

    // Throws state_error when features have not been computed.
    void require_features() const;
};

struct EnumerateLimits {
    std::size_t max_length_cap = 64;       // refuse longer searches
    std::size_t max_paths = 2'000'000;     // refuse larger sets
};

// All simple 4-connected obstacle-free start-to-goal paths with at most
// max_length moves, in canonical lexicographic move-string order.  Features
// are left uncomputed.
//
// Throws empty_set_error if no path satisfies the bound, resource_error if a
// limit is exceeded, argument_error if max_length is below the start-goal
// Manhattan distance.
TrajectorySet enumerate_trajectories(const GridWorld& world, std::size_t max_length,
                                     const EnumerateLimits& limits = {});

// Fills `features` per the descriptor list, then min-max normalizes each
// dimension to [0,1] across the set (a single-element set normalizes to all
// zeros).  object-proximity(i) is the mean over path cells of
// exp(-euclidean distance to object i); path-length is the cell count;
// mean-x / mean-y average the cell coordinates.
TrajectorySet compute_features(TrajectorySet set, const GridWorld& world,
                               const FeatureSet& features);

// Uniform subsample without replacement, deterministic in `seed`.  The
// result preserves the input's relative order.  If must_include is given,
// that trajectory is always a member (it is excluded from the random pool
// and inserted).  Feature vectors are carried over as-is; they are NOT
// renormalized, so densities over subsamples stay comparable.
TrajectorySet subsample(const TrajectorySet& set, std::size_t size, std::uint64_t seed,
                        const std::optional<Trajectory>& must_include = std::nullopt);

// Index of `t` in `set`, if present.
std::optional<std::size_t> find_trajectory(const TrajectorySet& set, const Trajectory& t);

}  // namespace lessinfer
