#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brauerlab/blocks.hpp"
#include "support.hpp"

using namespace brauerlab;
using namespace testsupport;

namespace {

/// Exhaustive scan of the center for idempotents (independent oracle).
std::vector<AlgebraElement> scan_center_idempotents(const Field& f, const Subgroup& s) {
    auto basis = center_basis(s);
    int dz = static_cast<int>(basis.size());
    std::vector<AlgebraElement> found;
    std::vector<int> v(dz, 0);
    while (true) {
        AlgebraElement cand(s);
        for (int i = 0; i < dz; ++i)
            if (v[i]) cand = ae_add(f, cand, ae_scale(f, static_cast<Field::El>(v[i]), basis[i]));
        if (ae_is_idempotent(f, cand)) found.push_back(cand);
        int i = 0;
        while (i < dz) {
            if (++v[i] < f.q()) break;
            v[i] = 0;
            ++i;
        }
        if (i == dz) break;
    }
    return found;
}

int transposition(const GroupPtr& g) {
    for (int x = 1; x < g->order(); ++x)
        if (g->element_order(x) == 2) return x;
    throw std::logic_error("no involution");
}

int three_cycle(const GroupPtr& g) {
    for (int x = 1; x < g->order(); ++x)
        if (g->element_order(x) == 3) return x;
    throw std::logic_error("no 3-element");
}

}  // namespace

TEST_CASE("group algebra arithmetic") {
    auto f2p = Field::make(2);
    const Field& f = *f2p;
    Subgroup ws3 = Subgroup::full(s3());
    CHECK(center_basis(ws3).size() == 3);
    CHECK(center_basis(Subgroup::full(v4())).size() == 4);

    AlgebraElement one = ae_one(ws3);
    CHECK(ae_is_central(f, one));
    CHECK(ae_is_idempotent(f, one));
    CHECK(antipode(one) == one);
    CHECK(augmentation(f, one) == 1);
}

TEST_CASE("block idempotents of small group algebras") {
    auto f2p = Field::make(2);
    const Field& f2 = *f2p;

    // F2C2: the group algebra of a p-group is indecomposable.
    auto b2 = block_idempotents(f2, Subgroup::full(c2()));
    CHECK(b2.certified);
    REQUIRE(b2.blocks.size() == 1);
    CHECK(b2.blocks[0] == ae_one(Subgroup::full(c2())));

    // F2S3: exactly the two idempotents c+c^2 and 1+c+c^2.
    Subgroup ws3 = Subgroup::full(s3());
    auto bs3 = block_idempotents(f2, ws3);
    CHECK(bs3.certified);
    REQUIRE(bs3.blocks.size() == 2);
    int c = three_cycle(s3());
    AlgebraElement e1(ws3);
    e1.coeffs[ws3.pos(c)] = 1;
    e1.coeffs[ws3.pos(s3()->mul(c, c))] = 1;
    AlgebraElement e0 = ae_add(f2, ae_one(ws3), e1);
    bool has_e0 = false, has_e1 = false;
    for (const auto& b : bs3.blocks) {
        has_e0 = has_e0 || b == e0;
        has_e1 = has_e1 || b == e1;
    }
    CHECK(has_e0);
    CHECK(has_e1);

    // F3S3: a single block.
    auto f3p = Field::make(3);
    auto bs33 = block_idempotents(*f3p, ws3);
    CHECK(bs33.blocks.size() == 1);

    // Exhaustive center-scan oracle agreement for all catalog groups, p=2,3.
    for (auto g : {c1(), c2(), c3(), c4(), v4(), s3(), d8(), q8()}) {
        Subgroup whole = Subgroup::full(g);
        for (int p : {2, 3}) {
            auto fp = Field::make(p);
            auto blocks = block_idempotents(*fp, whole);
            CHECK(blocks.certified);
            auto idems = scan_center_idempotents(*fp, whole);
            // primitives in the scan: no finer orthogonal splitting
            int primitive = 0;
            for (const auto& e : idems) {
                if (e.is_zero()) continue;
                bool prim = true;
                for (const auto& e2 : idems) {
                    if (e2.is_zero() || e2 == e) continue;
                    if (ae_mul(*fp, e2, e) == e2) prim = false;
                }
                if (prim) ++primitive;
            }
            CHECK(static_cast<int>(blocks.blocks.size()) == primitive);
            // every computed block appears in the scan
            for (const auto& b : blocks.blocks) {
                bool seen = false;
                for (const auto& e : idems) seen = seen || e == b;
                CHECK(seen);
            }
        }
    }

    // Antipode permutes the blocks.
    for (const auto& b : bs3.blocks) {
        AlgebraElement star = antipode(b);
        bool member = false;
        for (const auto& b2 : bs3.blocks) member = member || b2 == star;
        CHECK(member);
    }

    // Splitting field: blocks of F[GxH] are exactly the e (x) f^*.
    {
        auto f4 = Field::make(2, 2);
        auto prod = Product::make(s3(), s3());
        auto bprod = block_idempotents(*f4, Subgroup::full(prod->group));
        auto bfac = block_idempotents(*f4, ws3);
        CHECK(bprod.blocks.size() == bfac.blocks.size() * bfac.blocks.size());
        for (const auto& e : bfac.blocks)
            for (const auto& ff : bfac.blocks) {
                AlgebraElement fstar = antipode(ff);
                AlgebraElement pair(Subgroup::full(prod->group));
                for (int i = 0; i < ws3.order(); ++i)
                    for (int j = 0; j < ws3.order(); ++j)
                        pair.coeffs[pair.sub.pos(prod->encode(ws3.elems[i], ws3.elems[j]))] =
                            f4->mul(e.coeffs[i], fstar.coeffs[j]);
                bool member = false;
                for (const auto& b : bprod.blocks) member = member || b == pair;
                CHECK(member);
            }
    }
}

TEST_CASE("Brauer homomorphism") {
    auto f2p = Field::make(2);
    const Field& f2 = *f2p;
    auto g = s3();
    Subgroup ws3 = Subgroup::full(g);
    auto blocks = block_idempotents(f2, ws3);
    AlgebraElement e0 = principal_block(f2, blocks.blocks);
    AlgebraElement e1 = blocks.blocks[blocks.blocks[0] == e0 ? 1 : 0];

    Subgroup t = Subgroup::closure(g, {transposition(g)});
    CHECK(brauer_hom(f2, ae_one(ws3), t) == ae_one(centralizer(ws3, t)));

    // br_t(e0) = 1 in F2C2 (no 3-cycle centralizes t), br_t(e1) = 0.
    AlgebraElement br0 = brauer_hom(f2, e0, t);
    CHECK(br0 == ae_one(centralizer(ws3, t)));
    CHECK(brauer_hom(f2, e1, t).is_zero());

    // Multiplicativity on the P-stable subalgebra, exhaustively over the
    // orbit-sum basis.
    std::vector<AlgebraElement> stable_basis;
    {
        std::vector<char> donev(g->order(), 0);
        for (int x = 0; x < g->order(); ++x) {
            if (donev[x]) continue;
            AlgebraElement a(ws3);
            std::vector<int> orb{x};
            donev[x] = 1;
            for (size_t h = 0; h < orb.size(); ++h)
                for (int s : t.elems) {
                    int y = g->conj(s, orb[h]);
                    if (!donev[y]) {
                        donev[y] = 1;
                        orb.push_back(y);
                    }
                }
            for (int y : orb) a.coeffs[ws3.pos(y)] = 1;
            stable_basis.push_back(a);
        }
    }
    for (const auto& a : stable_basis)
        for (const auto& b : stable_basis) {
            AlgebraElement lhs = brauer_hom(f2, ae_mul(f2, a, b), t);
            AlgebraElement rhs = ae_mul(f2, brauer_hom(f2, a, t), brauer_hom(f2, b, t));
            CHECK(lhs == rhs);
        }

    CHECK_THROWS_AS(brauer_hom(f2, [&] {
                        AlgebraElement bad(ws3);
                        bad.coeffs[ws3.pos(three_cycle(g))] = 1;
                        return bad;
                    }(), t),
                    std::invalid_argument);
}

TEST_CASE("Brauer pairs of F2S3") {
    auto f2p = Field::make(2);
    const Field& f2 = *f2p;
    auto g = s3();
    auto poset = brauer_pairs(g, f2p, 2);

    // Pairs: (1,e0), (1,e1), and one (C2, 1) per transposition.
    CHECK(poset.pairs.size() == 5);

    Subgroup ws3 = Subgroup::full(g);
    auto blocks = block_idempotents(f2, ws3);
    AlgebraElement e0 = principal_block(f2, blocks.blocks);
    AlgebraElement e1 = blocks.blocks[blocks.blocks[0] == e0 ? 1 : 0];
    Subgroup triv = Subgroup::trivial(g);
    int i0 = poset.index_of(triv, ae_lift(e0, centralizer(ws3, triv)));
    int i1 = poset.index_of(triv, ae_lift(e1, centralizer(ws3, triv)));
    REQUIRE(i0 >= 0);
    REQUIRE(i1 >= 0);

    Subgroup t = Subgroup::closure(g, {transposition(g)});
    int it = poset.index_of(t, ae_one(centralizer(ws3, t)));
    REQUIRE(it >= 0);
    CHECK(poset.leq[i0][it]);
    CHECK_FALSE(poset.leq[i1][it]);
    // (1, e1) has no strictly larger pair.
    for (size_t j = 0; j < poset.pairs.size(); ++j)
        if (static_cast<int>(j) != i1) CHECK_FALSE(poset.leq[i1][j]);

    // Subpair uniqueness for every pair and every subgroup of its first
    // component, for all catalog groups and p in {2, 3}.
    for (auto grp : {c1(), c2(), c3(), c4(), v4(), s3(), d8(), q8()}) {
        for (int p : {2, 3}) {
            auto fp = Field::make(p, Field::splitting_degree(
                                         p, [&] {
                                             int e = exponent(Subgroup::full(grp));
                                             while (e % p == 0) e /= p;
                                             return e;
                                         }()));
            auto ps = brauer_pairs(grp, fp, p);
            for (size_t i = 0; i < ps.pairs.size(); ++i)
                for (const auto& q : all_subgroups(ps.pairs[i].p))
                    ps.subpair(static_cast<int>(i), q);  // throws unless unique
        }
    }

    // Defect groups: principal block has Sylow defect, e1 has trivial defect.
    auto bp0 = block_pairs_and_defect(poset, e0);
    CHECK(bp0.defect_groups.front().order() == 2);
    auto bp1 = block_pairs_and_defect(poset, e1);
    CHECK(bp1.defect_groups.front().order() == 1);

    // Principal-block defect = Sylow p across the catalog.
    for (auto grp : {c2(), c3(), c4(), v4(), s3(), d8(), q8()}) {
        for (int p : {2, 3}) {
            auto fp = Field::make(p, Field::splitting_degree(
                                         p, [&] {
                                             int e = exponent(Subgroup::full(grp));
                                             while (e % p == 0) e /= p;
                                             return e;
                                         }()));
            auto ps = brauer_pairs(grp, fp, p);
            auto bl = block_idempotents(*fp, Subgroup::full(grp));
            auto bp = block_pairs_and_defect(ps, principal_block(*fp, bl.blocks));
            CHECK(bp.defect_groups.front().order() == sylow_subgroup(grp, p).order());
        }
    }
}

TEST_CASE("covering blocks and Fong-Reynolds") {
    auto f2p = Field::make(2);
    const Field& f2 = *f2p;
    auto g = s3();
    Subgroup ws3 = Subgroup::full(g);
    Subgroup t = Subgroup::closure(g, {transposition(g)});
    Subgroup ct = centralizer(ws3, t);

    // N = C here, so the cover of 1 is 1.
    AlgebraElement e = ae_one(ct);
    AlgebraElement cover = covering_block(f2, t, e);
    CHECK(cover == ae_one(normalizer(ws3, t)));

    // A stable idempotent covers itself: P = 1, e = principal block.
    auto blocks = block_idempotents(f2, ws3);
    AlgebraElement e0 = principal_block(f2, blocks.blocks);
    Subgroup triv = Subgroup::trivial(g);
    CHECK(covering_block(f2, triv, ae_lift(e0, centralizer(ws3, triv))) == e0);

    // Round trips on transitive modules of N_G(P) belonging to the cover.
    for (const auto& s : all_subgroups(normalizer(ws3, t))) {
        FModule m = linearize(coset_gset(normalizer(ws3, t), s), f2p);
        FModule mcut = cut_module(m, cover);
        if (mcut.dim == 0) continue;
        CHECK(fong_reynolds_roundtrip(f2, t, e, mcut) == Verdict::kYes);
    }

    // Decomposition lemma at P with f the cover.
    for (const auto& s : all_subgroups(normalizer(ws3, t))) {
        FModule m = linearize(coset_gset(normalizer(ws3, t), s), f2p);
        FModule mcut = cut_module(m, cover);
        if (mcut.dim == 0) continue;
        CHECK(lemma_frcor_decompose(f2, t, cover, mcut) == Verdict::kYes);
    }

    // lemma: e is a block of FH and inductions land in the cover.
    Subgroup h = ct;  // P C_G(P) = C2 here
    FModule m = linearize(coset_gset(h, Subgroup::trivial(g)), f2p);
    FModule mcut = cut_module(m, ae_lift(e, h));
    CHECK(lemma_forthm3_check(f2, t, e, h, mcut, 2));
}

TEST_CASE("module Brauer pairs") {
    auto f2p = Field::make(2);
    const Field& f2 = *f2p;
    auto g = s3();
    Subgroup ws3 = Subgroup::full(g);
    auto blocks = block_idempotents(f2, ws3);
    AlgebraElement e0 = principal_block(f2, blocks.blocks);

    // P trivial: the block cut itself.
    FModule reg = linearize(regular_gset(ws3), f2p);
    Subgroup triv = Subgroup::trivial(g);
    FModule cut0 = module_brauer_pair(reg, triv, ae_lift(e0, centralizer(ws3, triv)), 2);
    CHECK(cut0.dim == cut_module(reg, e0).dim);

    // Projective module at P != 1: zero.
    Subgroup t = Subgroup::closure(g, {transposition(g)});
    CHECK(module_brauer_pair(reg, t, ae_one(centralizer(ws3, t)), 2).dim == 0);

    // F2[S3/C2] at (C2, 1): one dimension survives.
    FModule cos = linearize(coset_gset(ws3, t), f2p);
    FModule mbp = module_brauer_pair(cos, t, ae_one(centralizer(ws3, t)), 2, &e0);
    CHECK(mbp.dim == 1);
}
