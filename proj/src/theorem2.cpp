#include "brauerlab/theorem2.hpp"

namespace brauerlab {

namespace {

/// k(X_u, Y_v) = 1 for all points of two G-sets.
bool stabilizer_condition(const ProductSubgroup& x, const ProductSubgroup& y,
                          const GSet& u, const GSet& v) {
    const auto& hgrp = *x.amb->right;
    std::vector<uint64_t> k2u(u.size, 0), k1v(v.size, 0);
    for (int pnt = 0; pnt < u.size; ++pnt)
        for (int h = 0; h < hgrp.order(); ++h)
            if (x.contains(FiniteGroup::kId, h) &&
                u.act[x.amb->encode(FiniteGroup::kId, h)][pnt] == pnt)
                k2u[pnt] |= uint64_t{1} << h;
    for (int pnt = 0; pnt < v.size; ++pnt)
        for (int h = 0; h < hgrp.order(); ++h)
            if (y.contains(h, FiniteGroup::kId) &&
                v.act[y.amb->encode(h, FiniteGroup::kId)][pnt] == pnt)
                k1v[pnt] |= uint64_t{1} << h;
    for (int a = 0; a < u.size; ++a)
        for (int b = 0; b < v.size; ++b)
            if ((k2u[a] & k1v[b]) != 1) return false;
    return true;
}

/// Vertex route: k(P,Q) = 1 over all conjugates of all vertex pairs.
bool vertex_condition(const ProductSubgroup& x, const ProductSubgroup& y,
                      const FModule& m, const FModule& n, int prime, uint64_t seed,
                      std::vector<Subgroup>* m_vertices = nullptr,
                      std::vector<Subgroup>* n_vertices = nullptr) {
    auto decompose_vertices = [&](const FModule& mod, const ProductSubgroup& host) {
        std::vector<Subgroup> verts;
        for (const auto& s : decompose_indecomposable(mod, seed).summands)
            verts.push_back(vertex(s, prime));
        (void)host;
        return verts;
    };
    std::vector<Subgroup> vm = decompose_vertices(m, x);
    std::vector<Subgroup> vn = decompose_vertices(n, y);
    if (m_vertices) *m_vertices = vm;
    if (n_vertices) *n_vertices = vn;
    const auto& hgrp = *x.amb->right;
    for (const auto& p : vm)
        for (const auto& q : vn)
            for (int a : x.sub.elems)
                for (int b : y.sub.elems) {
                    Subgroup pc = conjugate_subgroup(a, p);
                    Subgroup qc = conjugate_subgroup(b, q);
                    // k(P', Q') inside the middle group
                    for (int h = 1; h < hgrp.order(); ++h)
                        if (pc.contains(x.amb->encode(FiniteGroup::kId, h)) &&
                            qc.contains(y.amb->encode(h, FiniteGroup::kId)))
                            return false;
                }
    return true;
}

}  // namespace

bool theorem2_hypothesis_crosscheck(const ProductSubgroup& x, const ProductSubgroup& y,
                                    const FModule& m, const FModule& n, int prime,
                                    uint64_t seed) {
    std::vector<Subgroup> vm, vn;
    bool cond1 = vertex_condition(x, y, m, n, prime, seed, &vm, &vn);
    // Condition (2) realized with the coset sets X/P, Y/Q per vertex pair.
    bool cond2 = true;
    for (const auto& p : vm)
        for (const auto& q : vn) {
            GSet u = coset_gset(x.sub, p);
            GSet v = coset_gset(y.sub, q);
            cond2 = cond2 && stabilizer_condition(x, y, u, v);
        }
    if (cond1 != cond2)
        throw std::logic_error("vertex and stabilizer forms of the hypothesis disagree");
    return cond1;
}

Theorem2Report verify_theorem2(const Theorem1Context& ctx, const FModule& m,
                               const FModule& n, int prime, uint64_t seed,
                               const ExtTensorMod* big_pre, int crosscheck_cap,
                               Theorem2Workspace* ws) {
    if (!is_p_group(ctx.Z, prime)) throw std::invalid_argument("Z must be a p-subgroup");
    const Field& f = *m.field;
    Theorem2Report rep;
    rep.orbit_count = static_cast<int>(ctx.reps.size());

    if (m.perm && n.perm) {
        rep.hypothesis_met = stabilizer_condition(ctx.X, ctx.Y, *m.perm, *n.perm);
    } else {
        rep.hypothesis_met = vertex_condition(ctx.X, ctx.Y, m, n, prime, seed);
    }

    if (m.dim == 0 || n.dim == 0) {
        rep.eta_equivariant = true;
        rep.eta_invertible = true;
        rep.verdict = true;
        return rep;
    }

    // Codomain: (M ext-tensor N)(Z).
    ExtTensorMod big_local;
    if (!big_pre) big_local = ext_tensor_mod(ctx.X, ctx.Y, m, n, ctx.GK, crosscheck_cap);
    const ExtTensorMod& big = big_pre ? *big_pre : big_local;
    Theorem2Workspace ws_local;
    if (!ws) ws = &ws_local;
    BrauerData cod = brauer_construction(big.mod, ctx.Z, prime, &ws->big_ws);
    if (!(cod.mod.acting == ctx.N))
        throw std::logic_error("Brauer construction acting group differs from N");
    rep.codomain_dim = cod.mod.dim;

    std::vector<FModule> domains;
    std::vector<Mat> eta_blocks;  // codomain.dim x domain_block.dim
    for (int r : ctx.reps) {
        const GroupHom& w = ctx.omega[r];
        OmegaGroups og = groups_of_omega(ctx, w);
        if (!is_p_group(og.Xw.sub, prime) || !is_p_group(og.Yw.sub, prime))
            throw std::logic_error("X(omega) or Y(omega) is not a p-group");
        const BrauerData& ma = cached_brauer(m, og.Xw.sub, prime, ws->m_ws);
        const BrauerData& nb = cached_brauer(n, og.Yw.sub, prime, ws->n_ws);
        if (!(ma.mod.acting == og.Xtil.sub) || !(nb.mod.acting == og.Ytil.sub))
            throw std::logic_error("Brauer construction acting groups differ from Xtil/Ytil");
        ExtTensorMod e =
            ext_tensor_mod(og.Xtil, og.Ytil, ma.mod, nb.mod, ctx.GK, crosscheck_cap);

        FModule dom = e.mod.dim == 0
                          ? FModule::zero(ctx.GK->group, ctx.N, m.field)
                          : induce_module(ctx.N, restrict_module(e.mod, og.Nw));
        int ddim = dom.dim;
        Mat block(cod.mod.dim, ddim);
        if (e.mod.dim > 0) {
            // Br_Z on the simple tensors of Brauer-lifted basis vectors.
            int pairs = ma.mod.dim * nb.mod.dim;
            Mat classes(big.mod.dim, pairs);
            for (int a = 0; a < ma.mod.dim; ++a) {
                std::vector<Field::El> mv(m.dim), nv(n.dim);
                for (int i = 0; i < m.dim; ++i) mv[i] = ma.section.at(i, a);
                for (int b = 0; b < nb.mod.dim; ++b) {
                    for (int i = 0; i < n.dim; ++i) nv[i] = nb.section.at(i, b);
                    auto cls = big.tensor_class(mv, nv);
                    for (int i = 0; i < big.mod.dim; ++i)
                        classes.at(i, a * nb.mod.dim + b) = cls[i];
                }
            }
            // The classes are Z-fixed; express in the fixed basis, then Br.
            auto fixed_coords = solve(f, cod.fixed_basis, classes);
            if (!fixed_coords || mat_mul(f, cod.fixed_basis, *fixed_coords) != classes)
                throw std::logic_error("simple-tensor class is not Z-fixed");
            Mat w_mat = mat_mul(f, cod.br, *fixed_coords);  // cod.dim x pairs
            Mat zeta = mat_mul(f, w_mat, e.class_section);  // cod.dim x e.dim

            // eta on the induced basis: (coset rep r_c, j) -> act(r_c) zeta_j.
            CosetDecomposition dec = left_cosets(ctx.N, og.Nw);
            for (int c = 0; c < static_cast<int>(dec.reps.size()); ++c) {
                Mat acted = mat_mul(f, cod.mod.act(dec.reps[c]), zeta);
                for (int i = 0; i < cod.mod.dim; ++i)
                    for (int j = 0; j < e.mod.dim; ++j)
                        block.at(i, c * e.mod.dim + j) = acted.at(i, j);
            }
        }
        domains.push_back(std::move(dom));
        eta_blocks.push_back(std::move(block));
    }

    FModule domain = domains.empty() ? FModule::zero(ctx.GK->group, ctx.N, m.field)
                                     : direct_sum(domains);
    rep.domain_dim = domain.dim;
    Mat eta(cod.mod.dim, domain.dim);
    {
        int off = 0;
        for (const auto& b : eta_blocks) {
            for (int i = 0; i < b.rows; ++i)
                for (int j = 0; j < b.cols; ++j) eta.at(i, off + j) = b.at(i, j);
            off += b.cols;
        }
    }

    rep.eta_equivariant = true;
    for (int g : generating_set(ctx.N))
        if (mat_mul(f, cod.mod.act(g), eta) != mat_mul(f, eta, domain.act(g))) {
            rep.eta_equivariant = false;
            break;
        }
    rep.eta_invertible = domain.dim == cod.mod.dim && rank(f, eta) == cod.mod.dim;

    rep.verdict = rep.hypothesis_met ? (rep.eta_invertible && rep.eta_equivariant)
                                     : rep.eta_equivariant;
    rep.defect = rep.hypothesis_met && !rep.verdict;
    if (rep.defect)
        rep.note = "eta failed: domain " + std::to_string(rep.domain_dim) + " codomain " +
                   std::to_string(rep.codomain_dim) +
                   (rep.eta_equivariant ? "" : " (not equivariant)");
    return rep;
}

}  // namespace brauerlab
