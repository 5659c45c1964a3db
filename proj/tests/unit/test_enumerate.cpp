#include <doctest.h>

#include <algorithm>
#include <json.hpp>
#include <set>
#include <string>
#include <vector>

#include "lessinfer/trajectory_set.hpp"
#include "lessinfer/world.hpp"

using namespace lessinfer;

namespace {

GridWorld make_world(int w, int h, Cell start, Cell goal,
                     std::vector<Cell> obstacles = {}, std::vector<Cell> objects = {},
                     std::vector<std::string> features = {}) {
    nlohmann::json j{{"schema_version", 1},
                     {"width", w},
                     {"height", h},
                     {"start", {start.x, start.y}},
                     {"goal", {goal.x, goal.y}},
                     {"obstacles", nlohmann::json::array()},
                     {"objects", nlohmann::json::array()},
                     {"features", features}};
    for (Cell c : obstacles) j["obstacles"].push_back({c.x, c.y});
    for (Cell c : objects) j["objects"].push_back({c.x, c.y});
    return GridWorld::from_json(j);
}

// Independent path oracle: breadth-first expansion of partial simple paths,
// deliberately structured differently from the library's recursive search.
std::vector<std::string> oracle_paths(const GridWorld& w, std::size_t max_moves) {
    struct Partial {
        Cell at;
        std::set<std::pair<int, int>> visited;
        std::string moves;
    };
    const std::pair<char, Cell> steps[4] = {
        {'U', {0, 1}}, {'D', {0, -1}}, {'L', {-1, 0}}, {'R', {1, 0}}};

    std::vector<std::string> found;
    std::vector<Partial> frontier{{w.start, {{w.start.x, w.start.y}}, ""}};
    while (!frontier.empty()) {
        std::vector<Partial> next;
        for (const Partial& p : frontier) {
            if (p.at == w.goal) {
                found.push_back(p.moves);
                continue;
            }
            if (p.moves.size() == max_moves) continue;
            for (const auto& [letter, d] : steps) {
                const Cell c{p.at.x + d.x, p.at.y + d.y};
                if (!w.in_bounds(c) || w.blocked(c)) continue;
                if (p.visited.count({c.x, c.y})) continue;
                Partial q = p;
                q.at = c;
                q.visited.insert({c.x, c.y});
                q.moves += letter;
                next.push_back(std::move(q));
            }
        }
        frontier = std::move(next);
    }
    std::sort(found.begin(), found.end());
    return found;
}

std::vector<std::string> move_strings(const TrajectorySet& set) {
    std::vector<std::string> out;
    for (const auto& t : set.trajectories) out.push_back(t.moves());
    return out;
}

}  // namespace

TEST_CASE("a 3x3 open grid has six shortest corner-to-corner paths") {
    const GridWorld w = make_world(3, 3, {0, 0}, {2, 2});
    const TrajectorySet set = enumerate_trajectories(w, 4);
    REQUIRE(set.size() == 6);
    for (const auto& t : set.trajectories) CHECK(t.length() == 4);
    CHECK(move_strings(set) == oracle_paths(w, 4));
}

TEST_CASE("a center obstacle leaves exactly the two around-the-edge paths") {
    const GridWorld w = make_world(3, 3, {0, 0}, {2, 2}, {{1, 1}});
    const TrajectorySet set = enumerate_trajectories(w, 4);
    REQUIRE(set.size() == 2);
    CHECK(set.trajectories[0].moves() == "RRUU");
    CHECK(set.trajectories[1].moves() == "UURR");
}

TEST_CASE("enumeration matches the oracle on larger instances") {
    SUBCASE("4x4 open, longer budget") {
        const GridWorld w = make_world(4, 4, {0, 0}, {3, 3});
        const TrajectorySet set = enumerate_trajectories(w, 8);
        CHECK(move_strings(set) == oracle_paths(w, 8));
    }
    SUBCASE("4x3 with a wall gap") {
        const GridWorld w = make_world(4, 3, {0, 1}, {3, 1}, {{1, 0}, {1, 2}});
        const TrajectorySet set = enumerate_trajectories(w, 7);
        CHECK(move_strings(set) == oracle_paths(w, 7));
    }
    SUBCASE("5x5 two-object default budget") {
        const GridWorld w = make_world(5, 5, {0, 0}, {4, 4});
        const TrajectorySet set = enumerate_trajectories(w, 10);
        CHECK(move_strings(set) == oracle_paths(w, 10));
    }
}

TEST_CASE("results arrive in lexicographic move-string order") {
    const GridWorld w = make_world(4, 4, {0, 0}, {3, 3});
    const auto moves = move_strings(enumerate_trajectories(w, 8));
    CHECK(std::is_sorted(moves.begin(), moves.end()));
}

TEST_CASE("the length budget counts moves") {
    const GridWorld w = make_world(3, 3, {0, 0}, {2, 2});
    // Budget 6 admits length-4 and length-6 simple paths.
    const TrajectorySet set = enumerate_trajectories(w, 6);
    CHECK(set.size() == oracle_paths(w, 6).size());
    std::size_t longest = 0;
    for (const auto& t : set.trajectories) longest = std::max(longest, t.length());
    CHECK(longest == 6);
}

TEST_CASE("budgets below the start-goal distance are rejected up front") {
    const GridWorld w = make_world(3, 3, {0, 0}, {2, 2});
    CHECK_THROWS_AS(enumerate_trajectories(w, 3), argument_error);
}

TEST_CASE("an unreachable goal yields an empty-set error") {
    // Goal fenced off entirely.
    const GridWorld w =
        make_world(4, 4, {0, 0}, {3, 3}, {{2, 3}, {2, 2}, {3, 2}});
    CHECK_THROWS_AS(enumerate_trajectories(w, 12), empty_set_error);
}

TEST_CASE("the path-count guard aborts oversized searches") {
    const GridWorld w = make_world(5, 5, {0, 0}, {4, 4});
    EnumerateLimits limits;
    limits.max_paths = 10;
    CHECK_THROWS_AS(enumerate_trajectories(w, 10, limits), resource_error);
    limits = {};
    limits.max_length_cap = 8;
    CHECK_THROWS_AS(enumerate_trajectories(w, 10, limits), resource_error);
}

TEST_CASE("features are min-max normalized per dimension") {
    const GridWorld w = make_world(5, 5, {0, 0}, {4, 4}, {}, {{0, 4}, {4, 0}},
                                   {"object-proximity:0", "object-proximity:1"});
    TrajectorySet set = enumerate_trajectories(w, 10);
    set = compute_features(std::move(set), w, w.features);
    REQUIRE(set.featured());
    REQUIRE(set.features.size() == set.size());

    double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
    for (const auto& f : set.features) {
        REQUIRE(f.size() == 2);
        CHECK(f[0] >= 0.0);
        CHECK(f[0] <= 1.0);
        CHECK(f[1] >= 0.0);
        CHECK(f[1] <= 1.0);
        lo0 = std::min(lo0, f[0]);
        hi0 = std::max(hi0, f[0]);
        lo1 = std::min(lo1, f[1]);
        hi1 = std::max(hi1, f[1]);
    }
    // Min-max scaling is exact at the extremes.
    CHECK(lo0 == 0.0);
    CHECK(hi0 == 1.0);
    CHECK(lo1 == 0.0);
    CHECK(hi1 == 1.0);
}

TEST_CASE("a constant feature dimension normalizes to zeros") {
    // Shortest-path-only budget: every path has the same cell count, so
    // path-length is constant across the set.
    const GridWorld w =
        make_world(3, 3, {0, 0}, {2, 2}, {}, {}, {"path-length", "mean-x"});
    TrajectorySet set = enumerate_trajectories(w, 4);
    set = compute_features(std::move(set), w, w.features);
    for (const auto& f : set.features) CHECK(f[0] == 0.0);
}

TEST_CASE("proximity features order paths by closeness to the object") {
    const GridWorld w = make_world(3, 3, {0, 0}, {2, 2}, {}, {{0, 2}},
                                   {"object-proximity:0"});
    TrajectorySet set = enumerate_trajectories(w, 4);
    set = compute_features(std::move(set), w, w.features);
    // The path hugging the left edge (UURR) passes through the object cell;
    // the one hugging the bottom edge (RRUU) stays farthest away.
    const auto moves = move_strings(set);
    const auto at = [&](const std::string& m) {
        return set.features[static_cast<std::size_t>(
            std::find(moves.begin(), moves.end(), m) - moves.begin())][0];
    };
    CHECK(at("UURR") == 1.0);
    CHECK(at("RRUU") == 0.0);
}

TEST_CASE("subsampling preserves order, size, and feature vectors") {
    const GridWorld w = make_world(5, 5, {0, 0}, {4, 4}, {}, {{0, 4}, {4, 0}},
                                   {"object-proximity:0", "object-proximity:1"});
    TrajectorySet full = compute_features(enumerate_trajectories(w, 10), w, w.features);

    const TrajectorySet sub = subsample(full, 25, 7);
    REQUIRE(sub.size() == 25);

    // Order preserved: the subsample's move strings appear in the same
    // relative order as in the full set, and features are carried over
    // verbatim (no renormalization on the subset).
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < sub.size(); ++i) {
        const auto idx = find_trajectory(full, sub.trajectories[i]);
        REQUIRE(idx.has_value());
        CHECK(*idx >= cursor);
        cursor = *idx;
        CHECK(sub.features[i] == full.features[*idx]);
    }
}

TEST_CASE("subsampling is deterministic in the seed") {
    const GridWorld w = make_world(5, 5, {0, 0}, {4, 4}, {}, {{0, 4}},
                                   {"object-proximity:0"});
    TrajectorySet full = compute_features(enumerate_trajectories(w, 10), w, w.features);
    const auto a = subsample(full, 30, 123);
    const auto b = subsample(full, 30, 123);
    const auto c = subsample(full, 30, 124);
    REQUIRE(a.size() == b.size());
    bool same = true, differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        same &= a.trajectories[i].moves() == b.trajectories[i].moves();
        differs |= a.trajectories[i].moves() != c.trajectories[i].moves();
    }
    CHECK(same);
    CHECK(differs);
}

TEST_CASE("subsampling can force a member in") {
    const GridWorld w = make_world(5, 5, {0, 0}, {4, 4}, {}, {{0, 4}},
                                   {"object-proximity:0"});
    TrajectorySet full = compute_features(enumerate_trajectories(w, 10), w, w.features);
    const Trajectory keep = full.trajectories[17];
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const TrajectorySet sub = subsample(full, 10, seed, keep);
        REQUIRE(sub.size() == 10);
        CHECK(find_trajectory(sub, keep).has_value());
    }
}

TEST_CASE("subsampling the full size returns the whole set") {
    const GridWorld w = make_world(3, 3, {0, 0}, {2, 2});
    TrajectorySet full = enumerate_trajectories(w, 4);
    const TrajectorySet sub = subsample(full, full.size(), 9);
    REQUIRE(sub.size() == full.size());
    for (std::size_t i = 0; i < full.size(); ++i)
        CHECK(sub.trajectories[i].moves() == full.trajectories[i].moves());
}

TEST_CASE("oversized subsample requests are rejected") {
    const GridWorld w = make_world(3, 3, {0, 0}, {2, 2});
    TrajectorySet full = enumerate_trajectories(w, 4);
    CHECK_THROWS_AS(subsample(full, full.size() + 1, 0), argument_error);
    CHECK_THROWS_AS(subsample(full, 0, 0), argument_error);
}
