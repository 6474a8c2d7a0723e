#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brauerlab/blocks.hpp"
#include "support.hpp"

using namespace brauerlab;
using namespace testsupport;

TEST_CASE("identity equivalence for F2C2") {
    auto f2 = Field::make(2);
    auto blocks = block_idempotents(*f2, Subgroup::full(c2()));
    REQUIRE(blocks.blocks.size() == 1);
    auto w = identity_equivalence(c2(), f2, 2, blocks.blocks[0]);
    CHECK(w.certified);
    CHECK(w.axioms_hold);
    CHECK(w.d.order() == 2);  // defect = whole 2-group
}

TEST_CASE("identity equivalence for both blocks of F2S3") {
    auto f2 = Field::make(2);
    auto blocks = block_idempotents(*f2, Subgroup::full(s3()));
    REQUIRE(blocks.blocks.size() == 2);
    for (const auto& b : blocks.blocks) {
        auto w = identity_equivalence(s3(), f2, 2, b);
        CHECK(w.certified);
        CHECK(w.axioms_hold);
        int expected = augmentation(*f2, b) == 1 ? 2 : 1;
        CHECK(w.d.order() == expected);
    }
}

TEST_CASE("identity equivalence for F3S3 and F2D8") {
    auto f3 = Field::make(3);
    auto b3 = block_idempotents(*f3, Subgroup::full(s3()));
    REQUIRE(b3.blocks.size() == 1);
    auto w3 = identity_equivalence(s3(), f3, 3, b3.blocks[0]);
    CHECK(w3.certified);
    CHECK(w3.axioms_hold);
    CHECK(w3.d.order() == 3);

    auto f2 = Field::make(2);
    auto bd = block_idempotents(*f2, Subgroup::full(d8()));
    REQUIRE(bd.blocks.size() == 1);
    auto wd = identity_equivalence(d8(), f2, 2, bd.blocks[0]);
    CHECK(wd.certified);
    CHECK(wd.axioms_hold);
    CHECK(wd.d.order() == 8);
}

TEST_CASE("theorem 3 for the principal block of F2S3") {
    auto f2 = Field::make(2);
    Subgroup ws3 = Subgroup::full(s3());
    auto blocks = block_idempotents(*f2, ws3);
    AlgebraElement e0 = principal_block(*f2, blocks.blocks);
    auto w = identity_equivalence(s3(), f2, 2, e0);
    REQUIRE(w.axioms_hold);

    int instances = 0;
    for (const auto& q : all_subgroups(w.e)) {
        for (const auto& s : subgroup_class_reps(ws3, all_subgroups(s3()))) {
            FModule mu = cut_module(linearize(coset_gset(ws3, s), f2), e0);
            if (mu.dim == 0) continue;
            auto rep = verify_theorem3(w, q, mu);
            CHECK(rep.commutes);
            ++instances;
        }
    }
    CHECK(instances >= 6);
}

TEST_CASE("theorem 3 for F3S3") {
    auto f3 = Field::make(3);
    Subgroup ws3 = Subgroup::full(s3());
    auto blocks = block_idempotents(*f3, ws3);
    AlgebraElement e0 = principal_block(*f3, blocks.blocks);
    auto w = identity_equivalence(s3(), f3, 3, e0);
    REQUIRE(w.axioms_hold);
    CHECK(w.e.order() == 3);

    // Q = Sylow 3 with the trivial module: both paths commute.
    int instances = 0;
    for (const auto& q : all_subgroups(w.e)) {
        for (const auto& s : subgroup_class_reps(ws3, all_subgroups(s3()))) {
            FModule mu = cut_module(linearize(coset_gset(ws3, s), f3), e0);
            if (mu.dim == 0) continue;
            auto rep = verify_theorem3(w, q, mu);
            CHECK(rep.commutes);
            ++instances;
        }
    }
    CHECK(instances >= 6);
}

TEST_CASE("theorem 3 at Q = 1 degenerates to block projection consistency") {
    auto f2 = Field::make(2);
    Subgroup ws3 = Subgroup::full(s3());
    auto blocks = block_idempotents(*f2, ws3);
    AlgebraElement e0 = principal_block(*f2, blocks.blocks);
    auto w = identity_equivalence(s3(), f2, 2, e0);
    FModule mu = cut_module(linearize(regular_gset(ws3), f2), e0);
    auto rep = verify_theorem3(w, Subgroup::trivial(s3()), mu);
    CHECK(rep.commutes);
    // At Q=1 both paths are e_A (gamma (x) mu): dims agree with the cut.
    CHECK(rep.path_top_dim == rep.path_bottom_dim);
}
