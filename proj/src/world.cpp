#include "lessinfer/world.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace lessinfer {

namespace {

Cell cell_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw config_error(std::string(what) + ": expected a [x, y] integer pair");
    return Cell{j[0].get<int>(), j[1].get<int>()};
}

nlohmann::json cell_to_json(Cell c) { return nlohmann::json::array({c.x, c.y}); }

}  // namespace

FeatureDescriptor FeatureDescriptor::parse(const std::string& text) {
    FeatureDescriptor d;
    if (text == "path-length") {
        d.kind = Kind::path_length;
    } else if (text == "mean-x") {
        d.kind = Kind::mean_x;
    } else if (text == "mean-y") {
        d.kind = Kind::mean_y;
    } else if (text.rfind("object-proximity:", 0) == 0) {
        d.kind = Kind::object_proximity;
        const std::string idx = text.substr(17);
        try {
            std::size_t pos = 0;
            const long v = std::stol(idx, &pos);
            if (pos != idx.size() || v < 0) throw std::invalid_argument(idx);
            d.anchor = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw config_error("feature descriptor: bad anchor index in '" + text + "'");
        }
    } else {
        throw config_error("unknown feature descriptor '" + text + "'");
    }
    return d;
}

std::string FeatureDescriptor::to_string() const {
    switch (kind) {
        case Kind::path_length: return "path-length";
        case Kind::mean_x: return "mean-x";
        case Kind::mean_y: return "mean-y";
        case Kind::object_proximity: return "object-proximity:" + std::to_string(anchor);
    }
    return "?";
}

FeatureSet FeatureSet::parse(const std::vector<std::string>& names) {
    if (names.empty()) throw config_error("feature set: at least one descriptor required");
    FeatureSet fs;
    fs.descriptors.reserve(names.size());
    for (const auto& n : names) fs.descriptors.push_back(FeatureDescriptor::parse(n));
    return fs;
}

std::vector<std::string> FeatureSet::names() const {
    std::vector<std::string> out;
    out.reserve(descriptors.size());
    for (const auto& d : descriptors) out.push_back(d.to_string());
    return out;
}

bool GridWorld::blocked(Cell c) const {
    return std::find(obstacles.begin(), obstacles.end(), c) != obstacles.end();
}

void GridWorld::validate() const {
    if (width <= 0 || height <= 0) throw config_error("world: width and height must be positive");
    if (!in_bounds(start)) throw config_error("world: start cell out of bounds");
    if (!in_bounds(goal)) throw config_error("world: goal cell out of bounds");
    if (start == goal) throw config_error("world: start and goal must differ");
    if (blocked(start)) throw config_error("world: start cell is an obstacle");
    if (blocked(goal)) throw config_error("world: goal cell is an obstacle");
    for (Cell c : obstacles)
        if (!in_bounds(c)) throw config_error("world: obstacle out of bounds");
    for (Cell c : objects)
        if (!in_bounds(c)) throw config_error("world: object anchor out of bounds");
    for (const auto& d : features.descriptors)
        if (d.kind == FeatureDescriptor::Kind::object_proximity && d.anchor >= objects.size())
            throw config_error("world: feature '" + d.to_string() + "' refers to a missing object");
}

GridWorld GridWorld::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw config_error("world: expected a JSON object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
        throw config_error("world: missing integer schema_version");
    if (j["schema_version"].get<int>() != 1)
        throw config_error("world: unsupported schema_version (expected 1)");

    GridWorld w;
    try {
        w.width = j.at("width").get<int>();
        w.height = j.at("height").get<int>();
        w.start = cell_from_json(j.at("start"), "world start");
        w.goal = cell_from_json(j.at("goal"), "world goal");
        for (const auto& o : j.value("obstacles", nlohmann::json::array()))
            w.obstacles.push_back(cell_from_json(o, "world obstacle"));
        for (const auto& o : j.value("objects", nlohmann::json::array()))
            w.objects.push_back(cell_from_json(o, "world object"));
        std::vector<std::string> names;
        for (const auto& f : j.value("features", nlohmann::json::array()))
            names.push_back(f.get<std::string>());
        if (!names.empty()) w.features = FeatureSet::parse(names);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("world: ") + e.what());
    }
    w.validate();
    return w;
}

GridWorld GridWorld::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw config_error("world: cannot open '" + file.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("world '" + file.string() + "': " + e.what());
    }
    return from_json(j);
}

nlohmann::json GridWorld::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["width"] = width;
    j["height"] = height;
    j["start"] = cell_to_json(start);
    j["goal"] = cell_to_json(goal);
    j["obstacles"] = nlohmann::json::array();
    for (Cell c : obstacles) j["obstacles"].push_back(cell_to_json(c));
    j["objects"] = nlohmann::json::array();
    for (Cell c : objects) j["objects"].push_back(cell_to_json(c));
    j["features"] = features.names();
    return j;
}

}  // namespace lessinfer
