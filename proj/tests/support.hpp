#pragma once

#include "brauerlab/group.hpp"

namespace testsupport {

using namespace brauerlab;

inline GroupPtr c1() { return FiniteGroup::trivial(); }

inline GroupPtr c2() {
    static GroupPtr g = FiniteGroup::from_permutations(2, {{1, 0}}, "C2");
    return g;
}

inline GroupPtr c3() {
    static GroupPtr g = FiniteGroup::from_permutations(3, {{1, 2, 0}}, "C3");
    return g;
}

inline GroupPtr c4() {
    static GroupPtr g = FiniteGroup::from_permutations(4, {{1, 2, 3, 0}}, "C4");
    return g;
}

inline GroupPtr v4() {
    static GroupPtr g = FiniteGroup::from_permutations(4, {{1, 0, 2, 3}, {0, 1, 3, 2}}, "V4");
    return g;
}

inline GroupPtr s3() {
    static GroupPtr g = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}}, "S3");
    return g;
}

inline GroupPtr d8() {
    static GroupPtr g = FiniteGroup::from_permutations(4, {{1, 2, 3, 0}, {2, 1, 0, 3}}, "D8");
    return g;
}

inline GroupPtr q8() {
    static GroupPtr g = FiniteGroup::from_permutations(
        8, {{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}}, "Q8");
    return g;
}

/// Independent subgroup oracle: closure of every element subset (tiny groups).
std::vector<brauerlab::Subgroup> powerset_subgroups(const brauerlab::GroupPtr& g);

}  // namespace testsupport
