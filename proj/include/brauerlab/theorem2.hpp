#pragma once

#include "brauerlab/module.hpp"
#include "brauerlab/theorem1.hpp"

namespace brauerlab {

struct Theorem2Report {
    bool hypothesis_met = false;
    bool eta_equivariant = false;
    bool eta_invertible = false;
    bool verdict = false;
    bool defect = false;
    int orbit_count = 0;
    int domain_dim = 0;
    int codomain_dim = 0;
    std::string note;
};

/// Brauer-construction analogue of the fixed-point decomposition: the
/// assembled eta matrix must be an invertible equivariant map whenever the
/// vertex condition holds. Z (= ctx.Z) must be a p-subgroup. For
/// permutation inputs the hypothesis is checked on point stabilizers; for
/// general trivial-source inputs on vertices of the summands. A tensor
/// M (x) N already built for another Z may be passed to avoid rebuilding.
/// Caches reusable across the Z-loop of a sweep for fixed (M, N, prime):
/// Brauer data of M and N per subgroup, and fixed spaces of the big tensor.
struct Theorem2Workspace {
    BrauerWorkspace m_ws, n_ws, big_ws;
};

Theorem2Report verify_theorem2(const Theorem1Context& ctx, const FModule& m,
                               const FModule& n, int prime, uint64_t seed = 0,
                               const ExtTensorMod* big_pre = nullptr,
                               int crosscheck_cap = 0,
                               Theorem2Workspace* ws = nullptr);

/// Both equivalent forms of the vertex condition, cross-checked: (1)
/// k(P,Q) = 1 over all vertex pairs of summands, and (2) point stabilizers
/// of coset sets X/P, Y/Q. Throws if the two routes disagree.
bool theorem2_hypothesis_crosscheck(const ProductSubgroup& x, const ProductSubgroup& y,
                                    const FModule& m, const FModule& n, int prime,
                                    uint64_t seed = 0);

}  // namespace brauerlab
