#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "brauerlab/subdirect.hpp"
#include "support.hpp"

using namespace brauerlab;
using namespace testsupport;

namespace {

ProductSubgroup diagonal(const ProductPtr& p) {
    std::vector<std::pair<int, int>> gens;
    for (int x = 0; x < p->left->order(); ++x) gens.emplace_back(x, x);
    return ProductSubgroup::from_pairs(p, gens);
}

/// Definition-level composition oracle: scan all (g,k,h) triples.
std::set<std::pair<int, int>> compose_oracle(const ProductSubgroup& x,
                                             const ProductSubgroup& y) {
    std::set<std::pair<int, int>> out;
    for (int g = 0; g < x.amb->left->order(); ++g)
        for (int k = 0; k < y.amb->right->order(); ++k)
            for (int h = 0; h < x.amb->right->order(); ++h)
                if (x.contains(g, h) && y.contains(h, k)) out.insert({g, k});
    return out;
}

}  // namespace

TEST_CASE("projections and kernels") {
    auto gh = Product::make(s3(), c2());
    auto full = ProductSubgroup::full(gh);
    CHECK(full.p1.order() == 6);
    CHECK(full.k1.order() == 6);
    CHECK(full.p2.order() == 2);
    CHECK(full.k2.order() == 2);

    // k1 normal in p1 for every subgroup of the product.
    for (const auto& s : all_subgroups(gh->group)) {
        ProductSubgroup x(gh, s);
        Subgroup n1 = normalizer(x.p1, x.k1);
        CHECK(n1.order() == x.p1.order());
        Subgroup n2 = normalizer(x.p2, x.k2);
        CHECK(n2.order() == x.p2.order());
        CHECK(x.order() == x.p1.order() * x.k2.order());
        CHECK(x.order() == x.p2.order() * x.k1.order());
    }
}

TEST_CASE("composition") {
    auto cc = Product::make(c2(), c2());
    auto d = diagonal(cc);
    auto comp = compose(d, d, cc);
    CHECK(comp == d);

    auto gh = Product::make(s3(), c2());
    auto hk = Product::make(c2(), c3());
    auto gk = Product::make(s3(), c3());
    auto full = compose(ProductSubgroup::full(gh), ProductSubgroup::full(hk), gk);
    CHECK(full.order() == 18);

    // C2 x 1 composed with the diagonal stays C2 x 1.
    auto x = ProductSubgroup::from_pairs(cc, {{1, 0}});
    auto comp2 = compose(x, d, cc);
    CHECK(comp2 == x);

    // Oracle comparison over all subgroup pairs of (S3 x C2, C2 x C3).
    for (const auto& sx : all_subgroups(gh->group)) {
        ProductSubgroup px(gh, sx);
        for (const auto& sy : all_subgroups(hk->group)) {
            ProductSubgroup py(hk, sy);
            auto got = compose(px, py, gk);
            auto want = compose_oracle(px, py);
            std::set<std::pair<int, int>> gotset;
            for (int e : got.sub.elems) gotset.insert({gk->first(e), gk->second(e)});
            REQUIRE(gotset == want);
        }
    }

    // Monotonicity: X' <= X, Y' <= Y implies X'*Y' <= X*Y.
    auto xfull = ProductSubgroup::full(gh);
    auto yfull = ProductSubgroup::full(hk);
    auto whole = compose(xfull, yfull, gk);
    for (const auto& sx : all_subgroups(gh->group))
        for (const auto& sy : all_subgroups(hk->group)) {
            auto part = compose(ProductSubgroup(gh, sx), ProductSubgroup(hk, sy), gk);
            CHECK(whole.sub.contains_subgroup(part.sub));
        }
}

TEST_CASE("linking sets") {
    auto cc = Product::make(c2(), c2());
    auto d = diagonal(cc);
    auto l = linking_set(d, d, 1, 1);
    CHECK(l == std::vector<int>{1});

    auto full = ProductSubgroup::full(cc);
    CHECK(linking_set(full, full, 0, 1).size() == 2);

    // (g,k) outside X*Y links to nothing.
    auto x = ProductSubgroup::from_pairs(cc, {{1, 0}});
    CHECK(linking_set(x, d, 1, 1).empty());

    // |l(g,k)| is 0 or |k(X,Y)| everywhere.
    auto gh = Product::make(s3(), s3());
    for (const auto& sx : all_subgroups(gh->group)) {
        ProductSubgroup px(gh, sx);
        LinkData ld = link_data(px, px);
        for (int g = 0; g < 6; ++g)
            for (int k = 0; k < 6; ++k) {
                auto links = linking_set(px, px, g, k);
                CHECK((links.empty() || static_cast<int>(links.size()) == ld.kXY.order()));
            }
    }
}

TEST_CASE("linking map is a homomorphism onto p/k with kernel k1 x k2") {
    auto gh = Product::make(s3(), c2());
    auto hk = Product::make(c2(), c2());
    auto gk = Product::make(s3(), c2());
    for (const auto& sx : all_subgroups(gh->group)) {
        ProductSubgroup x(gh, sx);
        for (const auto& sy : all_subgroups(hk->group)) {
            ProductSubgroup y(hk, sy);
            auto xy = compose(x, y, gk);
            LinkData ld = link_data(x, y);
            const auto& h = *gh->right;
            // Homomorphism into p(X,Y)/k(X,Y): l(a)l(b) and l(ab) share a coset.
            for (int ea : xy.sub.elems)
                for (int eb : xy.sub.elems) {
                    int ab = gk->group->mul(ea, eb);
                    auto la = linking_set(x, y, gk->first(ea), gk->second(ea));
                    auto lb = linking_set(x, y, gk->first(eb), gk->second(eb));
                    auto lab = linking_set(x, y, gk->first(ab), gk->second(ab));
                    int prod = h.mul(la[0], lb[0]);
                    bool same = false;
                    for (int hh : lab)
                        if (ld.kXY.contains(h.mul(h.inv(hh), prod))) same = true;
                    CHECK(same);
                }
            // Kernel: members mapping into k(X,Y) are exactly k1(X) x k2(Y).
            int kernel = 0;
            for (int e : xy.sub.elems) {
                auto l = linking_set(x, y, gk->first(e), gk->second(e));
                if (ld.kXY.contains(l[0])) ++kernel;
            }
            CHECK(kernel == x.k1.order() * y.k2.order());
        }
    }
}

TEST_CASE("p_Z") {
    auto cc = Product::make(c2(), c2());
    auto d = diagonal(cc);
    // Z trivial: p_Z = k(X,Y).
    auto ztriv = Subgroup::trivial(cc->group);
    CHECK(p_z(d, d, ztriv, cc) == link_data(d, d).kXY);

    // X=Y=Delta(C2), Z=Delta(C2): p_Z = C2, k = 1.
    auto zd = d.sub;
    auto p = p_z(d, d, zd, cc);
    CHECK(p.order() == 2);
    CHECK(link_data(d, d).kXY.order() == 1);

    // X=Y=C2xC2 over H=C2: k(X,Y) = C2 = p(X,Y).
    auto full = ProductSubgroup::full(cc);
    LinkData ld = link_data(full, full);
    CHECK(ld.kXY.order() == 2);
    CHECK(ld.pXY.order() == 2);
    CHECK(p_z(full, full, ztriv, cc).order() == 2);

    CHECK_THROWS_AS(p_z(d, d, Subgroup::closure(cc->group, {cc->encode(1, 0)}), cc),
                    std::invalid_argument);
}

TEST_CASE("twisted diagonals") {
    auto cc = Product::make(c2(), c2());
    Subgroup p2 = Subgroup::full(c2());
    auto d = twisted_diagonal(cc, p2, identity_hom(p2), p2);
    CHECK(d.order() == 2);
    CHECK(is_twisted_diagonal(d));
    CHECK_FALSE(is_twisted_diagonal(ProductSubgroup::full(cc)));

    // X twisted diagonal iff both kernels trivial, over all subgroups.
    auto gh = Product::make(s3(), s3());
    for (const auto& s : all_subgroups(gh->group)) {
        ProductSubgroup x(gh, s);
        CHECK(is_twisted_diagonal(x) == (x.k1.order() == 1 && x.k2.order() == 1));
    }

    // Conjugation formula ^(g,h)Delta(P,phi,Q) = Delta(^gP, c_g phi c_h^-1, ^hQ).
    auto g = s3();
    auto ss = Product::make(g, g);
    for (const auto& q : all_subgroups(g)) {
        for (const auto& phi : all_homs(q, g)) {
            if (!phi.is_injective()) continue;
            Subgroup p = phi.image_subgroup();
            auto delta = twisted_diagonal(ss, p, phi, q);
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b) {
                    auto conj = conjugate_subgroup(ss->encode(a, b), delta.sub);
                    GroupHom phi2;
                    phi2.source = conjugate_subgroup(b, q);
                    phi2.target = g;
                    phi2.image.assign(6, -1);
                    for (int yy : q.elems)
                        phi2.image[g->conj(b, yy)] = g->conj(a, phi(yy));
                    auto delta2 = twisted_diagonal(ss, conjugate_subgroup(a, p), phi2,
                                                   phi2.source);
                    CHECK(conj == delta2.sub);
                }
        }
    }

    // Composition of twisted diagonals is twisted diagonal (sweep).
    auto hk = Product::make(s3(), s3());
    int checked = 0;
    for (const auto& q : all_subgroups(g))
        for (const auto& phi : all_homs(q, g)) {
            if (!phi.is_injective()) continue;
            auto x = twisted_diagonal(ss, phi.image_subgroup(), phi, q);
            for (const auto& r : all_subgroups(g))
                for (const auto& psi : all_homs(r, g)) {
                    if (!psi.is_injective()) continue;
                    auto y = twisted_diagonal(hk, psi.image_subgroup(), psi, r);
                    auto xy = compose(x, y, ss);
                    CHECK(is_twisted_diagonal(xy));
                    ++checked;
                }
        }
    CHECK(checked > 100);
}

TEST_CASE("conjugation commutes with composition") {
    // ^(g,h)X' * ^(h,k)Y' = ^(g,k)(X'*Y')
    auto gh = Product::make(s3(), c2());
    auto hk = Product::make(c2(), c2());
    auto gk = Product::make(s3(), c2());
    auto subsx = all_subgroups(gh->group);
    auto subsy = all_subgroups(hk->group);
    for (const auto& sx : subsx)
        for (const auto& sy : subsy) {
            ProductSubgroup x(gh, sx), y(hk, sy);
            auto xy = compose(x, y, gk);
            for (int g = 0; g < 6; ++g)
                for (int h = 0; h < 2; ++h)
                    for (int k = 0; k < 2; ++k) {
                        ProductSubgroup xc(gh, conjugate_subgroup(gh->encode(g, h), sx));
                        ProductSubgroup yc(hk, conjugate_subgroup(hk->encode(h, k), sy));
                        auto lhs = compose(xc, yc, gk);
                        auto rhs = conjugate_subgroup(gk->encode(g, k), xy.sub);
                        CHECK(lhs.sub == rhs);
                    }
        }
}

TEST_CASE("cross ambient comparison is an error") {
    auto a = Product::make(c2(), c2());
    auto b = Product::make(c2(), c2());
    auto da = diagonal(a);
    auto db = diagonal(b);
    CHECK_THROWS_AS(da == db, std::invalid_argument);
}
