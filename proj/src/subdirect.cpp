#include "brauerlab/subdirect.hpp"

#include <algorithm>
#include <set>

namespace brauerlab {

ProductSubgroup::ProductSubgroup(ProductPtr ambient, Subgroup members)
    : amb(std::move(ambient)), sub(std::move(members)) {
    if (sub.parent != amb->group)
        throw std::invalid_argument("subgroup does not live in the ambient product");
    std::vector<int> p1e, k1e, p2e, k2e;
    for (int e : sub.elems) {
        int g = amb->first(e), h = amb->second(e);
        p1e.push_back(g);
        p2e.push_back(h);
        if (h == FiniteGroup::kId) k1e.push_back(g);
        if (g == FiniteGroup::kId) k2e.push_back(h);
    }
    p1 = Subgroup(amb->left, std::move(p1e));
    k1 = Subgroup(amb->left, std::move(k1e));
    p2 = Subgroup(amb->right, std::move(p2e));
    k2 = Subgroup(amb->right, std::move(k2e));
    // |X| = |p1||k2| = |p2||k1| (the Goursat bijections, checked by counting).
    if (sub.order() != p1.order() * k2.order() || sub.order() != p2.order() * k1.order())
        throw std::logic_error("product subgroup projection/kernel count mismatch");
}

bool ProductSubgroup::operator==(const ProductSubgroup& other) const {
    if (amb != other.amb)
        throw std::invalid_argument("comparison of product subgroups across ambients");
    return sub.elems == other.sub.elems;
}

ProductSubgroup ProductSubgroup::full(ProductPtr ambient) {
    Subgroup all = Subgroup::full(ambient->group);
    return ProductSubgroup(std::move(ambient), std::move(all));
}

ProductSubgroup ProductSubgroup::from_pairs(ProductPtr ambient,
                                            const std::vector<std::pair<int, int>>& gens) {
    std::vector<int> ids;
    for (auto [g, h] : gens) ids.push_back(ambient->encode(g, h));
    Subgroup s = Subgroup::closure(ambient->group, ids);
    return ProductSubgroup(std::move(ambient), std::move(s));
}

LinkData link_data(const ProductSubgroup& x, const ProductSubgroup& y) {
    if (x.amb->right != y.amb->left)
        throw std::invalid_argument("middle groups do not match");
    LinkData d{intersect(x.k2, y.k1), intersect(x.p2, y.p1)};
    // k(X,Y) normal in p(X,Y)
    for (int h : d.pXY.elems)
        for (int a : d.kXY.elems)
            if (!d.kXY.contains(d.pXY.parent->conj(h, a)))
                throw std::logic_error("k(X,Y) is not normal in p(X,Y)");
    return d;
}

ProductSubgroup compose(const ProductSubgroup& x, const ProductSubgroup& y,
                        const ProductPtr& gk) {
    if (x.amb->right != y.amb->left)
        throw std::invalid_argument("middle groups do not match");
    if (gk->left != x.amb->left || gk->right != y.amb->right)
        throw std::invalid_argument("target ambient does not match factors");

    const int nh = x.amb->right->order();
    std::set<int> members;
    for (int e : x.sub.elems) {
        int g = x.amb->first(e), h = x.amb->second(e);
        for (int k = 0; k < y.amb->right->order(); ++k)
            if (y.contains(h, k)) members.insert(gk->encode(g, k));
    }
    (void)nh;
    ProductSubgroup result(gk, Subgroup(gk->group, {members.begin(), members.end()}));

    if (!result.k1.contains_subgroup(x.k1) || !x.p1.contains_subgroup(result.p1) ||
        !result.k2.contains_subgroup(y.k2) || !y.p2.contains_subgroup(result.p2))
        throw std::logic_error("composition containment chain violated");
    return result;
}

std::vector<int> linking_set(const ProductSubgroup& x, const ProductSubgroup& y,
                             int g, int k) {
    if (x.amb->right != y.amb->left)
        throw std::invalid_argument("middle groups do not match");
    std::vector<int> links;
    for (int h = 0; h < x.amb->right->order(); ++h)
        if (x.contains(g, h) && y.contains(h, k)) links.push_back(h);
    if (!links.empty()) {
        // l(g,k) = h * k(X,Y) for any member h.
        LinkData d = link_data(x, y);
        if (static_cast<int>(links.size()) != d.kXY.order())
            throw std::logic_error("linking set is not a single k(X,Y)-coset");
        const auto& hgrp = *x.amb->right;
        int h0 = links[0];
        for (int h : links)
            if (!d.kXY.contains(hgrp.mul(hgrp.inv(h0), h)))
                throw std::logic_error("linking set is not a coset of k(X,Y)");
    }
    return links;
}

Subgroup p_z(const ProductSubgroup& x, const ProductSubgroup& y, const Subgroup& z,
             const ProductPtr& gk) {
    if (z.parent != gk->group)
        throw std::invalid_argument("Z does not live in the given G x K ambient");
    std::set<int> hs;
    for (int e : z.elems) {
        int g = gk->first(e), k = gk->second(e);
        bool any = false;
        for (int h = 0; h < x.amb->right->order(); ++h)
            if (x.contains(g, h) && y.contains(h, k)) {
                hs.insert(h);
                any = true;
            }
        if (!any) throw std::invalid_argument("Z is not contained in X*Y");
    }
    Subgroup result(x.amb->right, {hs.begin(), hs.end()});
    result.check_subgroup();
    LinkData d = link_data(x, y);
    if (!result.contains_subgroup(d.kXY))
        throw std::logic_error("p_Z(X,Y) does not contain k(X,Y)");
    for (int h : result.elems)
        for (int a : d.kXY.elems)
            if (!d.kXY.contains(result.parent->conj(h, a)))
                throw std::logic_error("k(X,Y) is not normal in p_Z(X,Y)");
    return result;
}

ProductSubgroup twisted_diagonal(const ProductPtr& gh, const Subgroup& p,
                                 const GroupHom& phi, const Subgroup& q) {
    if (!phi.is_injective()) throw std::invalid_argument("phi is not injective");
    Subgroup img = phi.image_subgroup();
    if (!(img == p)) throw std::invalid_argument("phi image differs from P");
    std::vector<int> members;
    for (int yy : q.elems) members.push_back(gh->encode(phi(yy), yy));
    return ProductSubgroup(gh, Subgroup(gh->group, std::move(members)));
}

bool is_twisted_diagonal(const ProductSubgroup& x) {
    return x.k1.order() == 1 && x.k2.order() == 1;
}

}  // namespace brauerlab
