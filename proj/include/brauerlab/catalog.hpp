#pragma once

#include <map>

#include "brauerlab/group.hpp"

namespace brauerlab {

struct CatalogEntry {
    std::string name;
    int degree = 1;
    std::vector<std::vector<int>> generators;
};

/// Named permutation-group presentations; groups are built once and shared.
class Catalog {
public:
    static Catalog builtin();
    static Catalog from_json_file(const std::string& path);
    std::string to_json() const;

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    bool has(const std::string& name) const;
    GroupPtr group(const std::string& name) const;

private:
    std::vector<CatalogEntry> entries_;
    mutable std::map<std::string, GroupPtr> cache_;
};

}  // namespace brauerlab
