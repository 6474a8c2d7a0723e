#pragma once

#include <array>

#include "brauerlab/gset.hpp"

namespace brauerlab {

/// The group T <= G x H x K of triples (g,h,k) with (g,h) in X, (h,k) in Y
/// and (g,k) normalizing Z, stored as explicit triples of factor ids.
struct TGroup {
    std::vector<std::array<int, 3>> triples;
    std::vector<std::array<int, 3>> gens;  // greedy generating triples
};

/// Everything depending only on (X, Y, Z): the composition, linking data,
/// p_Z, the normalizer N_{X*Y}(Z), the group T, Omega with its T-orbit
/// partition and minimal orbit representatives.
struct Theorem1Context {
    ProductPtr GH, HK, GK;
    ProductSubgroup X, Y, XY;
    Subgroup Z;   // <= XY.sub
    LinkData link;
    Subgroup pZ;  // <= H
    Subgroup N;   // N_{X*Y}(Z)
    TGroup T;
    std::vector<GroupHom> omega;  // all of Omega, deterministic order
    std::vector<int> t_orbit;     // T-orbit id per omega index
    std::vector<int> reps;        // [T\Omega]: omega index per orbit, minimal image tuple

    std::vector<int> linking(int g, int k) const;  // l_{X,Y}(g,k)
};

Theorem1Context make_theorem1_context(const ProductSubgroup& x, const ProductSubgroup& y,
                                      const Subgroup& z, const ProductPtr& gk);

/// ^(g,h,k) omega = c_h o omega o c_{(g,k)}^{-1}; result is again in Omega
/// (asserted).
GroupHom t_action_omega(const Theorem1Context& ctx, const std::array<int, 3>& t,
                        const GroupHom& w);

struct OmegaGroups {
    ProductSubgroup Xw, Yw;      // X(omega) <= X, Y(omega) <= Y
    ProductSubgroup Xtil, Ytil;  // N_X(X(omega)), N_Y(Y(omega))
    Subgroup Nw;                 // N^omega_{X*Y}(Z) <= N
};

/// The five groups attached to omega. Asserts Z <= N^omega and
/// N^omega <= Xtil * Ytil.
OmegaGroups groups_of_omega(const Theorem1Context& ctx, const GroupHom& w);

/// The unique omega with (g,omega(g,k)) in X_u and (omega(g,k),k) in Y_v,
/// for a Z-fixed simple tensor with k(X_u,Y_v) = 1. Throws when the
/// uniqueness hypothesis fails or the tensor is not Z-fixed.
GroupHom omega_from_fixed_tensor(const Theorem1Context& ctx, const GSet& u, const GSet& v,
                                 const ExtTensor& ext, int pu, int pv);

/// One eta-summand: the domain Ind_{N^omega}^{N}(Res(U^{X(omega)}
/// ext-tensor V^{Y(omega)})) together with zeta and theta point maps into
/// the Z-fixed points of the big extended tensor.
struct ThetaData {
    OmegaGroups groups;
    FixedPointSet u_fix, v_fix;
    ExtTensor small;
    GSet res_small;      // small tensor restricted to N^omega
    InducedGSet domain;  // induced up to N
    std::vector<int> zeta;   // small point -> fixed-point index
    std::vector<int> theta;  // domain point -> fixed-point index
};

ThetaData theta_map(const Theorem1Context& ctx, const GSet& u, const GSet& v,
                    const ExtTensor& ext, const FixedPointSet& fixed, const GroupHom& w);

struct Theorem1Report {
    bool hypothesis_met = false;
    bool eta_equivariant = false;
    bool eta_bijective = false;
    bool verdict = false;  // hypothesis_met ? bijective && equivariant : equivariant
    bool defect = false;   // hypothesis met but eta failed: a reportable defect
    int omega_count = 0;
    int orbit_count = 0;
    int domain_size = 0;
    int codomain_size = 0;
    std::vector<int> summand_sizes;
    std::string counterexample;  // empty unless defect
};

Theorem1Report verify_theorem1(const Theorem1Context& ctx, const GSet& u, const GSet& v);
/// Variant reusing a tensor already built for (X,Y,U,V).
Theorem1Report verify_theorem1(const Theorem1Context& ctx, const GSet& u, const GSet& v,
                               const ExtTensor& ext);
/// Sweep variant with the Z-fixed subset and hypothesis flag precomputed
/// (hypothesis: -1 unknown, else 0/1).
Theorem1Report verify_theorem1(const Theorem1Context& ctx, const GSet& u, const GSet& v,
                               const ExtTensor& ext, const FixedPointSet& fixed,
                               int hypothesis);

/// The transport isomorphism phi_{omega',omega} between eta-summands for
/// ^t omega = omega'. Asserts independence of the choice of t, bijectivity,
/// equivariance, and theta_{omega'} o phi = theta_omega.
std::vector<int> transport(const Theorem1Context& ctx, const GSet& u, const GSet& v,
                           const ExtTensor& ext, const FixedPointSet& fixed,
                           const GroupHom& w_from, const GroupHom& w_to,
                           const std::array<int, 3>& t);

}  // namespace brauerlab
