#include "support.hpp"

#include <set>

namespace testsupport {

std::vector<brauerlab::Subgroup> powerset_subgroups(const brauerlab::GroupPtr& g) {
    using brauerlab::Subgroup;
    int n = g->order();
    if (n > 16) throw std::length_error("powerset oracle only for tiny groups");
    std::set<std::vector<int>> seen;
    for (uint32_t bits = 0; bits < (1u << n); ++bits) {
        std::vector<int> gens;
        for (int i = 0; i < n; ++i)
            if (bits >> i & 1) gens.push_back(i);
        seen.insert(Subgroup::closure(g, gens).elems);
    }
    std::vector<Subgroup> out;
    for (const auto& e : seen) out.emplace_back(g, e);
    return out;
}

}  // namespace testsupport
