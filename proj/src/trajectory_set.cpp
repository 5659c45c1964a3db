#include "lessinfer/trajectory_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "lessinfer/rng.hpp"

namespace lessinfer {

void TrajectorySet::require_features() const {
    if (trajectories.empty()) throw empty_set_error("trajectory set: no trajectories");
    if (!featured()) throw state_error("trajectory set: features have not been computed");
}

namespace {

// move deltas in canonical order D, L, R, U (see trajectory.cpp)
constexpr int kMoveDx[4] = {0, -1, 1, 0};
constexpr int kMoveDy[4] = {-1, 0, 0, 1};

struct Dfs {
    const GridWorld& world;
    std::size_t max_length;
    std::size_t max_paths;
    std::vector<Cell> path;
    std::vector<char> visited;  // width*height occupancy
    std::vector<Trajectory>& out;

    bool seen(Cell c) const { return visited[static_cast<std::size_t>(c.y) * world.width + c.x] != 0; }
    void mark(Cell c, bool v) { visited[static_cast<std::size_t>(c.y) * world.width + c.x] = v ? 1 : 0; }

    void run(Cell cur) {
        if (cur == world.goal) {
            if (out.size() >= max_paths)
                throw resource_error("enumerate: path count exceeds the configured cap");
            out.push_back(Trajectory{path});
            return;
        }
        if (path.size() - 1 == max_length) return;
        for (int m = 0; m < 4; ++m) {  // canonical order makes output lexicographic
            const Cell next{cur.x + kMoveDx[m], cur.y + kMoveDy[m]};
            if (!world.in_bounds(next) || world.blocked(next) || seen(next)) continue;
            mark(next, true);
            path.push_back(next);
            run(next);
            path.pop_back();
            mark(next, false);
        }
    }
};

}  // namespace

TrajectorySet enumerate_trajectories(const GridWorld& world, std::size_t max_length,
                                     const EnumerateLimits& limits) {
    world.validate();
    const std::size_t manhattan = static_cast<std::size_t>(
        std::abs(world.goal.x - world.start.x) + std::abs(world.goal.y - world.start.y));
    if (max_length < manhattan)
        throw argument_error("enumerate: max_length below the start-goal Manhattan distance");
    if (max_length > limits.max_length_cap)
        throw resource_error("enumerate: max_length exceeds the configured cap");

    TrajectorySet set;
    Dfs dfs{world, max_length, limits.max_paths, {}, {}, set.trajectories};
    dfs.visited.assign(static_cast<std::size_t>(world.width) * world.height, 0);
    dfs.path.push_back(world.start);
    dfs.mark(world.start, true);
    dfs.run(world.start);

    if (set.trajectories.empty())
        throw empty_set_error("enumerate: no start-to-goal path within the length bound");
    return set;
}

namespace {

double feature_value(const Trajectory& t, const GridWorld& world, const FeatureDescriptor& d) {
    switch (d.kind) {
        case FeatureDescriptor::Kind::path_length:
            return static_cast<double>(t.cells.size());
        case FeatureDescriptor::Kind::mean_x: {
            double s = 0;
            for (Cell c : t.cells) s += c.x;
            return s / static_cast<double>(t.cells.size());
        }
        case FeatureDescriptor::Kind::mean_y: {
            double s = 0;
            for (Cell c : t.cells) s += c.y;
            return s / static_cast<double>(t.cells.size());
        }
        case FeatureDescriptor::Kind::object_proximity: {
            if (d.anchor >= world.objects.size())
                throw config_error("feature '" + d.to_string() + "' refers to a missing object");
            const Cell o = world.objects[d.anchor];
            double s = 0;
            for (Cell c : t.cells) {
                const double dx = c.x - o.x;
                const double dy = c.y - o.y;
                s += std::exp(-std::sqrt(dx * dx + dy * dy));
            }
            return s / static_cast<double>(t.cells.size());
        }
    }
    return 0.0;
}

}  // namespace

TrajectorySet compute_features(TrajectorySet set, const GridWorld& world,
                               const FeatureSet& features) {
    if (set.trajectories.empty()) throw empty_set_error("compute_features: empty trajectory set");
    if (features.descriptors.empty())
        throw config_error("compute_features: feature set must be nonempty");

    const std::size_t n = set.trajectories.size();
    const std::size_t k = features.descriptors.size();
    set.features.assign(n, FeatureVector(k, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = 0; f < k; ++f)
            set.features[i][f] = feature_value(set.trajectories[i], world, features.descriptors[f]);

    // min-max normalize each dimension over the set; a constant dimension
    // (and hence any single-element set) maps to all zeros
    for (std::size_t f = 0; f < k; ++f) {
        double lo = set.features[0][f], hi = set.features[0][f];
        for (std::size_t i = 1; i < n; ++i) {
            lo = std::min(lo, set.features[i][f]);
            hi = std::max(hi, set.features[i][f]);
        }
        const double span = hi - lo;
        for (std::size_t i = 0; i < n; ++i)
            set.features[i][f] = span > 0 ? (set.features[i][f] - lo) / span : 0.0;
    }

    set.feature_set = features;
    return set;
}

TrajectorySet subsample(const TrajectorySet& set, std::size_t size, std::uint64_t seed,
                        const std::optional<Trajectory>& must_include) {
    const std::size_t n = set.size();
    if (size == 0) throw argument_error("subsample: size must be positive");
    if (size > n) throw argument_error("subsample: size exceeds the set size");

    std::optional<std::size_t> keep;
    if (must_include) {
        keep = find_trajectory(set, *must_include);
        if (!keep) throw argument_error("subsample: must_include trajectory is not in the set");
    }

    SeedStream stream(seed);
    std::vector<std::size_t> chosen;
    if (keep) {
        // draw size-1 from the other n-1 positions, then insert the forced
        // member; index arithmetic skips over *keep
        chosen = stream.sample_without_replacement(n - 1, size - 1);
        for (auto& idx : chosen)
            if (idx >= *keep) ++idx;
        chosen.push_back(*keep);
        std::sort(chosen.begin(), chosen.end());
    } else {
        chosen = stream.sample_without_replacement(n, size);
    }

    TrajectorySet out;
    out.feature_set = set.feature_set;
    out.trajectories.reserve(size);
    const bool carry = set.featured();
    if (carry) out.features.reserve(size);
    for (std::size_t idx : chosen) {
        out.trajectories.push_back(set.trajectories[idx]);
        if (carry) out.features.push_back(set.features[idx]);
    }
    return out;
}

std::optional<std::size_t> find_trajectory(const TrajectorySet& set, const Trajectory& t) {
    for (std::size_t i = 0; i < set.size(); ++i)
        if (set.trajectories[i] == t) return i;
    return std::nullopt;
}

}  // namespace lessinfer
