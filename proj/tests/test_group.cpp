#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brauerlab/group.hpp"
#include "support.hpp"

using namespace brauerlab;
using namespace testsupport;

TEST_CASE("closure from permutations") {
    CHECK(c2()->order() == 2);
    CHECK(s3()->order() == 6);
    CHECK(c1()->order() == 1);
    CHECK(v4()->order() == 4);
    CHECK(d8()->order() == 8);
    CHECK(q8()->order() == 8);

    // S3 closure matches the full symmetric group on 3 points.
    auto g = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
    g->validate();
    CHECK(g->order() == 6);

    // Exponent/element orders of Q8: one element of order 2, six of order 4.
    int order2 = 0, order4 = 0;
    for (int x = 1; x < q8()->order(); ++x) {
        int o = q8()->element_order(x);
        if (o == 2) ++order2;
        if (o == 4) ++order4;
    }
    CHECK(order2 == 1);
    CHECK(order4 == 6);

    CHECK_THROWS_AS(FiniteGroup::from_permutations(3, {{1, 2, 0}}, "", 2),
                    std::length_error);
    CHECK_THROWS(FiniteGroup::from_permutations(2, {{0, 0}}));
}

TEST_CASE("direct products") {
    auto p = Product::make(c2(), c2());
    CHECK(p->group->order() == 4);
    for (int x = 0; x < 4; ++x) CHECK(p->group->mul(x, x) == 0);  // exponent 2

    auto q = Product::make(c1(), s3());
    CHECK(q->group->order() == 6);
    auto p2 = projection_hom(q, 2);
    CHECK(p2.is_valid());
    CHECK(p2.is_injective());

    auto r = Product::make(s3(), c2());
    CHECK(r->group->order() == 12);
    r->group->validate();

    // p1 composed with the left embedding is the identity.
    auto emb = embedding_hom(r, 1);
    auto proj = projection_hom(r, 1);
    for (int x = 0; x < s3()->order(); ++x) CHECK(proj(emb(x)) == x);
}

TEST_CASE("subgroup enumeration against powerset oracle") {
    CHECK(all_subgroups(c2()).size() == 2);
    CHECK(all_subgroups(v4()).size() == 5);
    CHECK(all_subgroups(s3()).size() == 6);

    for (auto g : {c2(), c3(), c4(), v4(), s3(), d8(), q8()}) {
        auto fast = all_subgroups(g);
        auto oracle = powerset_subgroups(g);
        REQUIRE(fast.size() == oracle.size());
        std::set<std::vector<int>> a, b;
        for (const auto& s : fast) {
            s.check_subgroup();
            a.insert(s.elems);
        }
        for (const auto& s : oracle) b.insert(s.elems);
        CHECK(a == b);
    }

    // Output closed under normalizer and conjugation.
    auto subs = all_subgroups(s3());
    std::set<std::vector<int>> keys;
    for (const auto& s : subs) keys.insert(s.elems);
    Subgroup whole = Subgroup::full(s3());
    for (const auto& s : subs) {
        CHECK(keys.count(normalizer(whole, s).elems));
        for (int g = 0; g < s3()->order(); ++g)
            CHECK(keys.count(conjugate_subgroup(g, s).elems));
    }

    CHECK_THROWS_AS(all_subgroups(Subgroup::full(s3()), 4), std::length_error);
}

TEST_CASE("normalizer centralizer conjugate") {
    auto g = s3();
    Subgroup whole = Subgroup::full(g);
    // <(012)> has index 2, hence is normal.
    int c = -1;
    for (int x = 1; x < g->order(); ++x)
        if (g->element_order(x) == 3) {
            c = x;
            break;
        }
    Subgroup rot = Subgroup::closure(g, {c});
    CHECK(normalizer(whole, rot).order() == 6);
    CHECK(centralizer(whole, Subgroup::trivial(g)).order() == 6);
    for (const auto& s : all_subgroups(g)) {
        CHECK(conjugate_subgroup(FiniteGroup::kId, s) == s);
        Subgroup n = normalizer(whole, s);
        CHECK(n.contains_subgroup(s));
        CHECK(n.contains_subgroup(centralizer(whole, s)));
    }
}

TEST_CASE("hom enumeration") {
    auto triv = Subgroup::full(c1());
    CHECK(all_homs(triv, s3()).size() == 1);

    CHECK(all_homs(Subgroup::full(c2()), c2()).size() == 2);
    CHECK(all_homs(Subgroup::full(c3()), c2()).size() == 1);

    // Exhaustive oracle: maps C3 -> C2 which are multiplicative.
    int count = 0;
    for (int i0 = 0; i0 < 2; ++i0)
        for (int i1 = 0; i1 < 2; ++i1)
            for (int i2 = 0; i2 < 2; ++i2) {
                std::vector<int> img{i0, i1, i2};
                bool ok = img[FiniteGroup::kId] == 0;
                for (int a = 0; a < 3 && ok; ++a)
                    for (int b = 0; b < 3 && ok; ++b)
                        ok = img[c3()->mul(a, b)] == c2()->mul(img[a], img[b]);
                if (ok) ++count;
            }
    CHECK(count == 1);

    // Every produced hom revalidates.
    for (auto hg : {c4(), v4(), s3()})
        for (auto th : {c2(), v4(), s3()})
            for (const auto& h : all_homs(Subgroup::full(hg), th)) CHECK(h.is_valid());

    // Constraint restricts images pointwise.
    auto homs = all_homs(Subgroup::full(c2()), c2(),
                         [](int z) { return z == 0 ? std::vector<int>{0} : std::vector<int>{1}; });
    CHECK(homs.size() == 1);
    CHECK(homs[0].image[1] == 1);
}

TEST_CASE("cosets exponents sylow") {
    auto g = s3();
    Subgroup whole = Subgroup::full(g);
    int t = -1;
    for (int x = 1; x < 6; ++x)
        if (g->element_order(x) == 2) {
            t = x;
            break;
        }
    Subgroup sub = Subgroup::closure(g, {t});
    auto dec = left_cosets(whole, sub);
    CHECK(dec.reps.size() == 3);
    CHECK(exponent(whole) == 6);
    CHECK(sylow_subgroup(g, 2).order() == 2);
    CHECK(sylow_subgroup(g, 3).order() == 3);
    CHECK(sylow_subgroup(d8(), 2).order() == 8);
    CHECK(is_p_group(sylow_subgroup(g, 3), 3));
    CHECK(conjugacy_classes(whole).size() == 3);
    CHECK(conjugacy_classes(Subgroup::full(v4())).size() == 4);
}
