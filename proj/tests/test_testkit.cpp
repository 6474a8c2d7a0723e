#include <fstream>
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brauerlab/testkit.hpp"
#include "support.hpp"

using namespace brauerlab;
using namespace testsupport;

namespace {

ProductSubgroup diagonal(const ProductPtr& p) {
    std::vector<std::pair<int, int>> gens;
    for (int x = 0; x < p->left->order(); ++x) gens.emplace_back(x, x);
    return ProductSubgroup::from_pairs(p, gens);
}

}  // namespace

TEST_CASE("marks decide isomorphism") {
    auto g = s3();
    Subgroup whole = Subgroup::full(g);
    GSet reg = regular_gset(whole);
    CHECK(gsets_isomorphic(reg, reg));

    // Non-conjugate point stabilizers give distinct marks.
    Subgroup t = Subgroup::closure(g, {[&] {
                                        for (int x = 1; x < 6; ++x)
                                            if (g->element_order(x) == 2) return x;
                                        return -1;
                                    }()});
    Subgroup c = Subgroup::closure(g, {[&] {
                                        for (int x = 1; x < 6; ++x)
                                            if (g->element_order(x) == 3) return x;
                                        return -1;
                                    }()});
    CHECK_FALSE(gsets_isomorphic(coset_gset(whole, t), coset_gset(whole, c)));

    // Regular vs |G| fixed points.
    GSet fixed6 = one_point_gset(whole);
    for (int i = 0; i < 5; ++i) fixed6 = disjoint_union(fixed6, one_point_gset(whole));
    CHECK_FALSE(gsets_isomorphic(reg, fixed6));

    // Monotone: S <= S' gives count(S) >= count(S').
    auto subs = all_subgroups(g);
    GSet cos = coset_gset(whole, t);
    auto mk = marks(cos, subs);
    for (size_t i = 0; i < subs.size(); ++i)
        for (size_t j = 0; j < subs.size(); ++j)
            if (subs[j].contains_subgroup(subs[i]))
                CHECK(mk.counts[i] >= mk.counts[j]);
    CHECK(mk.counts[0] == cos.size);  // trivial subgroup row
}

TEST_CASE("fixed-point oracle") {
    auto cc = Product::make(c2(), c2());
    auto d = diagonal(cc);
    GSet u = regular_gset(d.sub);

    // Z trivial: the whole tensor.
    GSet all = oracle_fixed_ext_tensor(d, d, Subgroup::trivial(cc->group), u, u, cc);
    CHECK(all.size == 4);

    // Z = X*Y acting freely: empty.
    auto full = ProductSubgroup::full(cc);
    GSet ur = coset_gset(full.sub, Subgroup::trivial(cc->group));
    GSet none = oracle_fixed_ext_tensor(full, full, diagonal(cc).sub, ur, ur, cc);
    CHECK(none.size == 0);
}

TEST_CASE("center idempotent oracle") {
    auto f2 = Field::make(2);
    CHECK(oracle_center_idempotents(*f2, Subgroup::full(c2())).size() == 2);  // {0, 1}
    auto s3idems = oracle_center_idempotents(*f2, Subgroup::full(s3()));
    CHECK(s3idems.size() == 4);  // {0, 1, c+c2, 1+c+c2}
    auto prims = oracle_primitive_idempotents(*f2, Subgroup::full(s3()));
    CHECK(prims.size() == 2);
    auto blocks = block_idempotents(*f2, Subgroup::full(s3()));
    CHECK(prims.size() == blocks.blocks.size());
}

TEST_CASE("sweep on tiny catalogs") {
    Catalog cat = Catalog::builtin();

    SweepConfig empty;
    empty.groups = {};
    auto r0 = run_sweep(empty, cat);
    CHECK(r0.t1_instances == 0);
    CHECK(r0.defects.empty());

    SweepConfig c2only;
    c2only.groups = {"C2"};
    auto r1 = run_sweep(c2only, cat);
    CHECK(r1.t1_instances > 0);
    CHECK(r1.defects.empty());
    CHECK(r1.t1_verified == r1.t1_hypothesis_met);
    CHECK(r1.stab_failures == 0);
    CHECK(r1.biset_failures == 0);
    for (const auto& t : r1.t2) CHECK(t.verified == t.hypothesis_met);
}

TEST_CASE("sweep determinism across job counts and repeats") {
    Catalog cat = Catalog::builtin();
    SweepConfig cfg;
    cfg.groups = {"C1", "C2", "C3"};
    cfg.jobs = 1;
    auto serial = run_sweep(cfg, cat);
    cfg.jobs = 4;
    auto parallel = run_sweep(cfg, cat);
    auto parallel2 = run_sweep(cfg, cat);
    CHECK(serial.to_json() == parallel.to_json());
    CHECK(parallel.to_json() == parallel2.to_json());
    CHECK(serial.defects.empty());
    CHECK(serial.t1_hypothesis_met > 0);
}

TEST_CASE("catalog") {
    Catalog cat = Catalog::builtin();
    CHECK(cat.has("S3"));
    CHECK(cat.group("S3")->order() == 6);
    CHECK(cat.group("Q8")->order() == 8);
    CHECK(cat.group("C2xC2xC2")->order() == 8);
    CHECK(cat.group("D8")->order() == 8);
    CHECK_THROWS(cat.group("nope"));

    // Round-trip through JSON.
    std::string path = "/tmp/brauerlab_catalog_test.json";
    {
        std::ofstream out(path);
        out << cat.to_json();
    }
    Catalog loaded = Catalog::from_json_file(path);
    CHECK(loaded.entries().size() == cat.entries().size());
    CHECK(loaded.group("S3")->order() == 6);
}
