#pragma once

#include "brauerlab/group.hpp"

namespace brauerlab {

/// A subgroup X of an ambient direct product G x H, with its projections
/// p1(X), p2(X) and kernels k1(X), k2(X) cached. Equality requires the
/// identical ambient product object.
struct ProductSubgroup {
    ProductPtr amb;
    Subgroup sub;              // subgroup of amb->group
    Subgroup p1, k1;           // subgroups of amb->left
    Subgroup p2, k2;           // subgroups of amb->right

    ProductSubgroup() = default;
    ProductSubgroup(ProductPtr ambient, Subgroup members);

    int order() const { return sub.order(); }
    bool contains(int g, int h) const { return sub.contains(amb->encode(g, h)); }
    bool operator==(const ProductSubgroup& other) const;
    bool same_ambient(const ProductSubgroup& other) const { return amb == other.amb; }

    static ProductSubgroup full(ProductPtr ambient);
    static ProductSubgroup from_pairs(ProductPtr ambient,
                                      const std::vector<std::pair<int, int>>& gens);
};

/// k(X,Y) = k2(X) n k1(Y) and p(X,Y) = p2(X) n p1(Y), both subgroups of the
/// shared middle group H; k(X,Y) is normal in p(X,Y).
struct LinkData {
    Subgroup kXY;
    Subgroup pXY;
};

LinkData link_data(const ProductSubgroup& x, const ProductSubgroup& y);

/// Composition X*Y <= G x K: pairs (g,k) admitting a linking element.
/// Asserts k1(X) <= k1(X*Y) <= p1(X*Y) <= p1(X) and the mirror chain.
ProductSubgroup compose(const ProductSubgroup& x, const ProductSubgroup& y,
                        const ProductPtr& gk);

/// l_{X,Y}(g,k): all h with (g,h) in X and (h,k) in Y. Nonempty iff (g,k)
/// lies in X*Y; when nonempty it is a single coset h*k(X,Y) (asserted).
std::vector<int> linking_set(const ProductSubgroup& x, const ProductSubgroup& y,
                             int g, int k);

/// p_Z(X,Y): union of the linking sets over (g,k) in Z. Verified to be a
/// subgroup containing k(X,Y) as a normal subgroup. Z is given inside the
/// G x K ambient `gk`.
Subgroup p_z(const ProductSubgroup& x, const ProductSubgroup& y, const Subgroup& z,
             const ProductPtr& gk);

/// Delta(P, phi, Q) = {(phi(q), q) : q in Q} where phi : Q -> P is an
/// isomorphism given as a GroupHom with source Q and image P.
ProductSubgroup twisted_diagonal(const ProductPtr& gh, const Subgroup& p,
                                 const GroupHom& phi, const Subgroup& q);

bool is_twisted_diagonal(const ProductSubgroup& x);

}  // namespace brauerlab
