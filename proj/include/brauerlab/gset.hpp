#pragma once

#include "brauerlab/subdirect.hpp"

namespace brauerlab {

/// A finite left action of a subgroup of an ambient group on a point set.
/// act is indexed by ambient element id; rows exist only for acting elements.
struct GSet {
    GroupPtr group;   // ambient group whose ids index act
    Subgroup acting;  // the subgroup that actually acts
    int size = 0;
    std::vector<std::vector<int>> act;
    std::vector<std::string> labels;

    int apply(int g, int u) const { return act[g][u]; }
    bool is_empty() const { return size == 0; }
    /// act[id] identity, act[g]act[g'] = act[gg'] over acting pairs; throws.
    void validate() const;
};

GSet regular_gset(const Subgroup& s);
GSet one_point_gset(const Subgroup& s);
GSet empty_gset(const Subgroup& s);
/// Cosets big/small with big acting by left translation.
GSet coset_gset(const Subgroup& big, const Subgroup& small);
GSet disjoint_union(const GSet& a, const GSet& b);
GSet restrict_gset(const GSet& u, const Subgroup& s);

std::vector<std::vector<int>> orbits(const GSet& u);
Subgroup stabilizer(const GSet& u, int point);

struct FixedPointSet {
    GSet set;               // acting: N_{U.acting}(S)
    std::vector<int> back;  // point index in the original set
};
FixedPointSet fixed_points(const GSet& u, const Subgroup& s);

struct InducedGSet {
    GSet set;  // acting: the inducing (big) subgroup
    CosetDecomposition cosets;
    int fiber_size = 0;
    int encode(int coset, int u) const { return coset * fiber_size + u; }
    int coset_of_point(int p) const { return p / fiber_size; }
    int fiber_of_point(int p) const { return p % fiber_size; }
    /// Point n (x) u for arbitrary n in big: reduce to (coset, m*u).
    int locate(const GSet& u, int n, int point) const;
};
/// Ind from u.acting up to big (u.acting <= big <= same ambient).
InducedGSet induce(const Subgroup& big, const GSet& u);

/// phi-hat(g (x) u) = g*phi(u) for an equivariant phi : U -> Res(V).
std::vector<int> lift_induced_map(const InducedGSet& ind, const GSet& u, const GSet& v,
                                  const std::vector<int>& phi);

bool is_equivariant(const GSet& src, const GSet& tgt, const std::vector<int>& map,
                    const Subgroup& over);

/// True iff phi is injective and g*phi(u) = phi(u') forces g into U's acting
/// subgroup; when true the induced map is built and its injectivity is
/// asserted (throws if violated).
bool induced_map_injectivity_check(const Subgroup& big, const GSet& u, const GSet& v,
                                   const std::vector<int>& phi);

/// Tensor-product set with provenance for simple tensors u (x) v.
struct TensorGSet {
    GSet set;                               // over the G x K ambient
    std::vector<int> orbit_of;              // |U|*|V| -> point
    std::vector<std::pair<int, int>> reps;  // minimal (u,v) per point
    int pair_index(int u, int v, int vsize) const { return u * vsize + v; }
};

/// Tensor product over the middle group of two bisets (full-product actions).
TensorGSet biset_tensor(const GSet& u, const ProductPtr& gh, const GSet& v,
                        const ProductPtr& hk, const ProductPtr& gk);

/// Extended tensor product: k(X,Y)-orbits of U x V with the X*Y-action
/// through linking elements. Well-definedness (independence of the linking
/// element and of orbit representatives) is checked exhaustively when
/// `check` is set.
struct ExtTensor {
    TensorGSet tensor;
    ProductSubgroup xy;  // X*Y
    LinkData link;
};
ExtTensor ext_tensor_set(const ProductSubgroup& x, const ProductSubgroup& y,
                         const GSet& u, const GSet& v, const ProductPtr& gk,
                         bool check = true);

/// Factor a balanced map U x V -> W through the extended tensor product.
/// phi is indexed by u*|V|+v. Throws with a witness if the balance
/// condition fails.
std::vector<int> factor_through_ext_tensor(const ProductSubgroup& x,
                                           const ProductSubgroup& y, const GSet& u,
                                           const GSet& v, const ExtTensor& tensor,
                                           const GSet& w, const std::vector<int>& phi);

/// Both sides of (X*Y)_{u(x)v} = X_u * Y_v, asserted equal.
ProductSubgroup stabilizer_of_tensor(const ProductSubgroup& x, const ProductSubgroup& y,
                                     const GSet& u, const GSet& v, const ExtTensor& t,
                                     int pu, int pv);

}  // namespace brauerlab
