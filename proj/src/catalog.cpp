#include "brauerlab/catalog.hpp"

#include <fstream>

#include <json.hpp>

namespace brauerlab {

Catalog Catalog::builtin() {
    Catalog c;
    c.entries_ = {
        {"C1", 1, {}},
        {"C2", 2, {{1, 0}}},
        {"C3", 3, {{1, 2, 0}}},
        {"C4", 4, {{1, 2, 3, 0}}},
        {"V4", 4, {{1, 0, 2, 3}, {0, 1, 3, 2}}},
        {"S3", 3, {{1, 0, 2}, {1, 2, 0}}},
        {"D8", 4, {{1, 2, 3, 0}, {2, 1, 0, 3}}},
        {"Q8", 8, {{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}}},
        {"C2xC2xC2", 6, {{1, 0, 2, 3, 4, 5}, {0, 1, 3, 2, 4, 5}, {0, 1, 2, 3, 5, 4}}},
    };
    return c;
}

Catalog Catalog::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog file: " + path);
    nlohmann::json j;
    in >> j;
    Catalog c;
    if (!j.is_array()) throw std::runtime_error("catalog must be a JSON array");
    for (const auto& item : j) {
        CatalogEntry e;
        e.name = item.at("name").get<std::string>();
        e.degree = item.at("degree").get<int>();
        for (const auto& gen : item.at("generators"))
            e.generators.push_back(gen.get<std::vector<int>>());
        c.entries_.push_back(std::move(e));
    }
    return c;
}

std::string Catalog::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& e : entries_) {
        nlohmann::ordered_json item;
        item["name"] = e.name;
        item["degree"] = e.degree;
        item["generators"] = e.generators;
        j.push_back(std::move(item));
    }
    return j.dump(2);
}

bool Catalog::has(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name) return true;
    return false;
}

GroupPtr Catalog::group(const std::string& name) const {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    for (const auto& e : entries_) {
        if (e.name != name) continue;
        GroupPtr g = FiniteGroup::from_permutations(e.degree, e.generators, e.name);
        cache_[name] = g;
        return g;
    }
    throw std::runtime_error("unknown group: " + name);
}

}  // namespace brauerlab
