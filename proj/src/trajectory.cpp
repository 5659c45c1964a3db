#include "lessinfer/trajectory.hpp"

#include <algorithm>
#include <cstdlib>

namespace lessinfer {

namespace {

// canonical move order; lexicographic over these characters defines the
// enumeration order of trajectory sets
constexpr char kMoveChars[4] = {'D', 'L', 'R', 'U'};
constexpr int kMoveDx[4] = {0, -1, 1, 0};
constexpr int kMoveDy[4] = {-1, 0, 0, 1};

}  // namespace

std::string Trajectory::moves() const {
    std::string out;
    if (cells.size() < 2) return out;
    out.reserve(cells.size() - 1);
    for (std::size_t i = 1; i < cells.size(); ++i) {
        const int dx = cells[i].x - cells[i - 1].x;
        const int dy = cells[i].y - cells[i - 1].y;
        char c = 0;
        for (int m = 0; m < 4; ++m)
            if (dx == kMoveDx[m] && dy == kMoveDy[m]) c = kMoveChars[m];
        if (c == 0) throw argument_error("trajectory: consecutive cells are not 4-connected");
        out.push_back(c);
    }
    return out;
}

Trajectory Trajectory::from_moves(const GridWorld& world, const std::string& moves) {
    Trajectory t;
    t.cells.push_back(world.start);
    for (char c : moves) {
        int m = -1;
        for (int k = 0; k < 4; ++k)
            if (kMoveChars[k] == c) m = k;
        if (m < 0) throw argument_error(std::string("trajectory: unknown move character '") + c + "'");
        Cell next{t.cells.back().x + kMoveDx[m], t.cells.back().y + kMoveDy[m]};
        t.cells.push_back(next);
    }
    t.validate(world);
    return t;
}

void Trajectory::validate(const GridWorld& world) const {
    if (cells.size() < 2) throw argument_error("trajectory: needs at least two cells");
    if (!(cells.front() == world.start)) throw argument_error("trajectory: does not begin at start");
    if (!(cells.back() == world.goal)) throw argument_error("trajectory: does not end at goal");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell c = cells[i];
        if (!world.in_bounds(c)) throw argument_error("trajectory: cell out of bounds");
        if (world.blocked(c)) throw argument_error("trajectory: cell is an obstacle");
        if (i > 0) {
            const int manhattan =
                std::abs(c.x - cells[i - 1].x) + std::abs(c.y - cells[i - 1].y);
            if (manhattan != 1) throw argument_error("trajectory: cells not 4-connected");
        }
        for (std::size_t j = i + 1; j < cells.size(); ++j)
            if (cells[j] == c) throw argument_error("trajectory: repeated cell (path must be simple)");
    }
}

}  // namespace lessinfer
