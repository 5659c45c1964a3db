#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lessinfer/error.hpp"

namespace lessinfer {

struct Cell {
    int x = 0;
    int y = 0;

    bool operator==(const Cell&) const = default;
};

// Feature descriptor: which scalar summary of a trajectory to compute.
// object_proximity carries the index of the world object it refers to.
struct FeatureDescriptor {
    enum class Kind { object_proximity, path_length, mean_x, mean_y };

    Kind kind = Kind::path_length;
    std::size_t anchor = 0;  // object index, object_proximity only

    bool operator==(const FeatureDescriptor&) const = default;

    // Text forms: "object-proximity:<i>", "path-length", "mean-x", "mean-y".
    static FeatureDescriptor parse(const std::string& text);
    std::string to_string() const;
};

struct FeatureSet {
    std::vector<FeatureDescriptor> descriptors;

    bool operator==(const FeatureSet&) const = default;

    std::size_t dimension() const { return descriptors.size(); }
    static FeatureSet parse(const std::vector<std::string>& names);
    std::vector<std::string> names() const;
};

// Rectangular grid with impassable obstacles and a list of object anchors
// that feature functions can refer to.  Coordinates are (x, y) with x in
// [0, width) and y in [0, height); y grows upward.
struct GridWorld {
    int width = 0;
    int height = 0;
    Cell start;
    Cell goal;
    std::vector<Cell> obstacles;
    std::vector<Cell> objects;
    FeatureSet features;  // default descriptors shipped with the world file

    bool in_bounds(Cell c) const {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    bool blocked(Cell c) const;

    // Throws config_error if bounds/start/goal/obstacle invariants fail.
    void validate() const;

    static GridWorld from_json(const nlohmann::json& j);
    static GridWorld load(const std::filesystem::path& file);
    nlohmann::json to_json() const;
};

}  // namespace lessinfer
