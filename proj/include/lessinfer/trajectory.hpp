#pragma once

#include <string>
#include <vector>

#include "lessinfer/world.hpp"

namespace lessinfer {

// A simple (self-avoiding) 4-connected path from the world's start cell to
// its goal cell.  The unit of choice.
struct Trajectory {
    std::vector<Cell> cells;

    bool operator==(const Trajectory&) const = default;

    // Number of moves (edges); one less than the number of cells.
    std::size_t length() const { return cells.empty() ? 0 : cells.size() - 1; }

    // Move-string encoding, one char per move: D=(0,-1) L=(-1,0) R=(+1,0)
    // U=(0,+1).  The canonical enumeration order is lexicographic in this
    // encoding.
    std::string moves() const;
    static Trajectory from_moves(const GridWorld& world, const std::string& moves);

    // Throws argument_error unless the path starts at start, ends at goal,
    // steps only between 4-connected in-bounds non-obstacle cells, and never
    // revisits a cell.
    void validate(const GridWorld& world) const;
};

}  // namespace lessinfer
