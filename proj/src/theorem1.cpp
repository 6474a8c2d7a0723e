#include "brauerlab/theorem1.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace brauerlab {

namespace {

std::vector<int> image_tuple(const GroupHom& w, const Subgroup& z) {
    std::vector<int> t;
    t.reserve(z.elems.size());
    for (int e : z.elems) t.push_back(w.image[e]);
    return t;
}

std::array<int, 3> triple_mul(const GroupPtr& g, const GroupPtr& h, const GroupPtr& k,
                              const std::array<int, 3>& a, const std::array<int, 3>& b) {
    return {g->mul(a[0], b[0]), h->mul(a[1], b[1]), k->mul(a[2], b[2])};
}

}  // namespace

std::vector<int> Theorem1Context::linking(int g, int k) const {
    std::vector<int> out;
    for (int h = 0; h < GH->right->order(); ++h)
        if (X.contains(g, h) && Y.contains(h, k)) out.push_back(h);
    return out;
}

Theorem1Context make_theorem1_context(const ProductSubgroup& x, const ProductSubgroup& y,
                                      const Subgroup& z, const ProductPtr& gk) {
    Theorem1Context ctx;
    ctx.GH = x.amb;
    ctx.HK = y.amb;
    ctx.GK = gk;
    ctx.X = x;
    ctx.Y = y;
    ctx.XY = compose(x, y, gk);
    if (!ctx.XY.sub.contains_subgroup(z))
        throw std::invalid_argument("Z is not contained in X*Y");
    ctx.Z = z;
    ctx.link = link_data(x, y);
    ctx.pZ = p_z(x, y, z, gk);
    ctx.N = normalizer(ctx.XY.sub, z);

    // T = {(g,h,k) : (g,h) in X, (h,k) in Y, (g,k) in N}.
    const auto& kgrp = *y.amb->right;
    for (int e : x.sub.elems) {
        int g = x.amb->first(e), h = x.amb->second(e);
        for (int kk = 0; kk < kgrp.order(); ++kk)
            if (y.contains(h, kk) && ctx.N.contains(gk->encode(g, kk)))
                ctx.T.triples.push_back({g, h, kk});
    }
    // Short exact sequence 1 -> k(X,Y) -> T -> N -> 1, checked by counting.
    if (static_cast<int>(ctx.T.triples.size()) != ctx.link.kXY.order() * ctx.N.order())
        throw std::logic_error("|T| != |k(X,Y)| * |N_{X*Y}(Z)|");

    // Greedy generating triples of T.
    {
        const GroupPtr &gg = x.amb->left, &hh = x.amb->right, &kk = y.amb->right;
        auto enc = [&](const std::array<int, 3>& t) {
            return (t[0] * hh->order() + t[1]) * kk->order() + t[2];
        };
        std::set<int> closed{enc({0, 0, 0})};
        std::vector<std::array<int, 3>> closure{{0, 0, 0}};
        for (const auto& t : ctx.T.triples) {
            if (closed.count(enc(t))) continue;
            ctx.T.gens.push_back(t);
            for (size_t head = 0; head < closure.size(); ++head)
                for (const auto& s : ctx.T.gens) {
                    auto prod = triple_mul(gg, hh, kk, closure[head], s);
                    if (closed.insert(enc(prod)).second) closure.push_back(prod);
                }
            if (closure.size() == ctx.T.triples.size()) break;
        }
    }

    // Omega: homomorphisms Z -> p_Z(X,Y) lifting the linking map.
    ctx.omega = all_homs(z, x.amb->right, [&](int e) {
        return ctx.linking(gk->first(e), gk->second(e));
    });

    // T-orbits on Omega.
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < ctx.omega.size(); ++i)
        index[image_tuple(ctx.omega[i], z)] = static_cast<int>(i);
    ctx.t_orbit.assign(ctx.omega.size(), -1);
    int orbit_id = 0;
    for (size_t i = 0; i < ctx.omega.size(); ++i) {
        if (ctx.t_orbit[i] >= 0) continue;
        std::vector<int> queue{static_cast<int>(i)};
        ctx.t_orbit[i] = orbit_id;
        for (size_t head = 0; head < queue.size(); ++head)
            for (const auto& t : ctx.T.gens) {
                GroupHom moved = t_action_omega(ctx, t, ctx.omega[queue[head]]);
                auto it = index.find(image_tuple(moved, z));
                if (it == index.end())
                    throw std::logic_error("T-action left Omega");
                if (ctx.t_orbit[it->second] < 0) {
                    ctx.t_orbit[it->second] = orbit_id;
                    queue.push_back(it->second);
                }
            }
        ++orbit_id;
    }
    ctx.reps.assign(orbit_id, -1);
    for (size_t i = 0; i < ctx.omega.size(); ++i) {
        int o = ctx.t_orbit[i];
        if (ctx.reps[o] < 0 || image_tuple(ctx.omega[i], z) <
                                   image_tuple(ctx.omega[ctx.reps[o]], z))
            ctx.reps[o] = static_cast<int>(i);
    }

    // The map omega -> (X(omega), Y(omega)) is T-equivariant (checked on
    // generating triples).
    for (const auto& w : ctx.omega) {
        OmegaGroups og = groups_of_omega(ctx, w);
        for (const auto& t : ctx.T.gens) {
            GroupHom moved = t_action_omega(ctx, t, w);
            OmegaGroups ogm = groups_of_omega(ctx, moved);
            auto cx = conjugate_subgroup(ctx.GH->encode(t[0], t[1]), og.Xw.sub);
            auto cy = conjugate_subgroup(ctx.HK->encode(t[1], t[2]), og.Yw.sub);
            if (!(cx == ogm.Xw.sub) || !(cy == ogm.Yw.sub))
                throw std::logic_error("omega -> (X(omega),Y(omega)) not T-equivariant");
        }
    }
    return ctx;
}

GroupHom t_action_omega(const Theorem1Context& ctx, const std::array<int, 3>& t,
                        const GroupHom& w) {
    const auto& gk = *ctx.GK;
    const auto& hgrp = *ctx.GH->right;
    int tgk = gk.encode(t[0], t[2]);
    if (!ctx.X.contains(t[0], t[1]) || !ctx.Y.contains(t[1], t[2]) ||
        !ctx.N.contains(tgk))
        throw std::invalid_argument("triple is not in T");
    GroupHom out;
    out.source = w.source;
    out.target = w.target;
    out.image.assign(w.image.size(), -1);
    for (int e : ctx.Z.elems) {
        int pre = gk.group->conj(gk.group->inv(tgk), e);
        out.image[e] = hgrp.conj(t[1], w.image[pre]);
    }
    if (!out.is_valid()) throw std::logic_error("T-action produced a non-homomorphism");
    for (int e : ctx.Z.elems) {
        auto l = ctx.linking(gk.first(e), gk.second(e));
        if (std::find(l.begin(), l.end(), out.image[e]) == l.end())
            throw std::logic_error("T-action left Omega (linking constraint broken)");
    }
    return out;
}

OmegaGroups groups_of_omega(const Theorem1Context& ctx, const GroupHom& w) {
    const auto& gk = *ctx.GK;
    OmegaGroups og;
    std::vector<int> xw, yw;
    for (int e : ctx.Z.elems) {
        xw.push_back(ctx.GH->encode(gk.first(e), w.image[e]));
        yw.push_back(ctx.HK->encode(w.image[e], gk.second(e)));
    }
    Subgroup sx(ctx.GH->group, std::move(xw));
    Subgroup sy(ctx.HK->group, std::move(yw));
    sx.check_subgroup();
    sy.check_subgroup();
    if (!ctx.X.sub.contains_subgroup(sx) || !ctx.Y.sub.contains_subgroup(sy))
        throw std::logic_error("X(omega) or Y(omega) escapes X or Y");
    og.Xw = ProductSubgroup(ctx.GH, sx);
    og.Yw = ProductSubgroup(ctx.HK, sy);
    og.Xtil = ProductSubgroup(ctx.GH, normalizer(ctx.X.sub, sx));
    og.Ytil = ProductSubgroup(ctx.HK, normalizer(ctx.Y.sub, sy));

    // N^omega: image in N of the stabilizer T_omega.
    std::set<int> nw;
    const auto& hgrp = *ctx.GH->right;
    for (const auto& t : ctx.T.triples) {
        int tgk = gk.encode(t[0], t[2]);
        bool fixes = true;
        for (int e : ctx.Z.elems) {
            int pre = gk.group->conj(gk.group->inv(tgk), e);
            if (hgrp.conj(t[1], w.image[pre]) != w.image[e]) {
                fixes = false;
                break;
            }
        }
        if (fixes) nw.insert(tgk);
    }
    og.Nw = Subgroup(gk.group, {nw.begin(), nw.end()});
    if (!og.Nw.contains_subgroup(ctx.Z))
        throw std::logic_error("Z is not contained in N^omega");
    auto til = compose(og.Xtil, og.Ytil, ctx.GK);
    if (!til.sub.contains_subgroup(og.Nw))
        throw std::logic_error("N^omega escapes Xtil * Ytil");
    return og;
}

GroupHom omega_from_fixed_tensor(const Theorem1Context& ctx, const GSet& u, const GSet& v,
                                 const ExtTensor& ext, int pu, int pv) {
    int point = ext.tensor.orbit_of[pu * v.size + pv];
    for (int e : ctx.Z.elems)
        if (ext.tensor.set.act[e][point] != point)
            throw std::invalid_argument("tensor point is not Z-fixed");

    Subgroup su = stabilizer(u, pu);
    Subgroup sv = stabilizer(v, pv);
    ProductSubgroup xu(ctx.GH, su), yv(ctx.HK, sv);
    if (link_data(xu, yv).kXY.order() != 1)
        throw std::invalid_argument("k(X_u, Y_v) is not trivial");

    GroupHom w;
    w.source = ctx.Z;
    w.target = ctx.GH->right;
    w.image.assign(ctx.GK->group->order(), -1);
    const auto& hgrp = *ctx.GH->right;
    for (int e : ctx.Z.elems) {
        int g = ctx.GK->first(e), k = ctx.GK->second(e);
        int found = -1;
        for (int h = 0; h < hgrp.order(); ++h) {
            if (xu.contains(g, h) && yv.contains(h, k)) {
                if (found >= 0) throw std::logic_error("linking element not unique");
                found = h;
            }
        }
        if (found < 0) throw std::logic_error("Z-fixed tensor without linking element");
        w.image[e] = found;
    }
    if (!w.is_valid()) throw std::logic_error("recovered omega is not a homomorphism");
    for (int e : ctx.Z.elems) {
        auto l = ctx.linking(ctx.GK->first(e), ctx.GK->second(e));
        if (std::find(l.begin(), l.end(), w.image[e]) == l.end())
            throw std::logic_error("recovered omega violates the linking constraint");
    }
    OmegaGroups og = groups_of_omega(ctx, w);
    if (!su.contains_subgroup(og.Xw.sub) || !sv.contains_subgroup(og.Yw.sub))
        throw std::logic_error("X(omega) does not fix u (or Y(omega) v)");
    return w;
}

ThetaData theta_map(const Theorem1Context& ctx, const GSet& u, const GSet& v,
                    const ExtTensor& ext, const FixedPointSet& fixed, const GroupHom& w) {
    ThetaData td;
    td.groups = groups_of_omega(ctx, w);
    td.u_fix = fixed_points(u, td.groups.Xw.sub);
    td.v_fix = fixed_points(v, td.groups.Yw.sub);
    if (td.groups.Xw.order() == 1 && td.groups.Yw.order() == 1) {
        // Trivial omega: the small tensor is the big one.
        td.small = ext;
    } else {
        // fixed_points acts through the normalizer, which is Xtil/Ytil.
        td.small = ext_tensor_set(td.groups.Xtil, td.groups.Ytil, td.u_fix.set,
                                  td.v_fix.set, ctx.GK);
    }
    td.res_small = restrict_gset(td.small.tensor.set, td.groups.Nw);
    td.domain = induce(ctx.N, td.res_small);

    std::vector<int> where(ext.tensor.set.size, -1);
    for (size_t i = 0; i < fixed.back.size(); ++i) where[fixed.back[i]] = static_cast<int>(i);

    td.zeta.resize(td.small.tensor.set.size);
    for (int p = 0; p < td.small.tensor.set.size; ++p) {
        auto [iu, iv] = td.small.tensor.reps[p];
        int big = ext.tensor.orbit_of[td.u_fix.back[iu] * v.size + td.v_fix.back[iv]];
        if (where[big] < 0)
            throw std::logic_error("zeta image is not Z-fixed");
        td.zeta[p] = where[big];
    }
    td.theta.resize(td.domain.set.size);
    int nc = static_cast<int>(td.domain.cosets.reps.size());
    for (int c = 0; c < nc; ++c) {
        int n = td.domain.cosets.reps[c];
        for (int p = 0; p < td.small.tensor.set.size; ++p)
            td.theta[td.domain.encode(c, p)] = fixed.set.act[n][td.zeta[p]];
    }
    if (!is_equivariant(td.domain.set, fixed.set, td.theta, ctx.N))
        throw std::logic_error("theta is not equivariant");
    return td;
}

namespace {

bool stabilizer_hypothesis(const Theorem1Context& ctx, const GSet& u, const GSet& v) {
    // k(X_u, Y_v) = 1 for all u, v.
    const auto& hgrp = *ctx.GH->right;
    std::vector<uint64_t> k2u(u.size, 0), k1v(v.size, 0);
    for (int p = 0; p < u.size; ++p)
        for (int h = 0; h < hgrp.order(); ++h) {
            int e = ctx.GH->encode(FiniteGroup::kId, h);
            if (ctx.X.contains(FiniteGroup::kId, h) && u.act[e][p] == p)
                k2u[p] |= uint64_t{1} << h;
        }
    for (int p = 0; p < v.size; ++p)
        for (int h = 0; h < hgrp.order(); ++h) {
            int e = ctx.HK->encode(h, FiniteGroup::kId);
            if (ctx.Y.contains(h, FiniteGroup::kId) && v.act[e][p] == p)
                k1v[p] |= uint64_t{1} << h;
        }
    for (int a = 0; a < u.size; ++a)
        for (int b = 0; b < v.size; ++b)
            if ((k2u[a] & k1v[b]) != 1) return false;  // more than the identity bit
    return true;
}

Theorem1Report verify_impl(const Theorem1Context& ctx, const GSet& u, const GSet& v,
                           const ExtTensor& ext, const FixedPointSet& fixed,
                           int hypothesis) {
    Theorem1Report rep;
    rep.omega_count = static_cast<int>(ctx.omega.size());
    rep.orbit_count = static_cast<int>(ctx.reps.size());
    rep.hypothesis_met = hypothesis < 0 ? stabilizer_hypothesis(ctx, u, v)
                                        : hypothesis != 0;
    rep.codomain_size = fixed.set.size;

    std::vector<int> hit(fixed.set.size, 0);
    bool injective = true, equivariant = true;
    for (int r : ctx.reps) {
        ThetaData td = theta_map(ctx, u, v, ext, fixed, ctx.omega[r]);
        rep.summand_sizes.push_back(td.domain.set.size);
        rep.domain_size += td.domain.set.size;
        for (int p = 0; p < td.domain.set.size; ++p) {
            if (hit[td.theta[p]]++) injective = false;
        }
    }
    bool surjective = rep.domain_size == fixed.set.size && injective;
    for (int c : hit)
        if (c == 0) surjective = false;

    rep.eta_equivariant = equivariant;  // theta_map throws otherwise
    rep.eta_bijective = injective && surjective;
    rep.verdict = rep.hypothesis_met ? (rep.eta_bijective && rep.eta_equivariant)
                                     : rep.eta_equivariant;
    rep.defect = rep.hypothesis_met && !rep.verdict;
    if (rep.defect) {
        rep.counterexample = "eta not bijective: domain " + std::to_string(rep.domain_size) +
                             " codomain " + std::to_string(rep.codomain_size) +
                             (injective ? "" : " (not injective)");
    }
    return rep;
}

}  // namespace

Theorem1Report verify_theorem1(const Theorem1Context& ctx, const GSet& u, const GSet& v) {
    auto ext = ext_tensor_set(ctx.X, ctx.Y, u, v, ctx.GK);
    auto fixed = fixed_points(ext.tensor.set, ctx.Z);
    return verify_impl(ctx, u, v, ext, fixed, -1);
}

Theorem1Report verify_theorem1(const Theorem1Context& ctx, const GSet& u, const GSet& v,
                               const ExtTensor& ext) {
    auto fixed = fixed_points(ext.tensor.set, ctx.Z);
    return verify_impl(ctx, u, v, ext, fixed, -1);
}

Theorem1Report verify_theorem1(const Theorem1Context& ctx, const GSet& u, const GSet& v,
                               const ExtTensor& ext, const FixedPointSet& fixed,
                               int hypothesis) {
    return verify_impl(ctx, u, v, ext, fixed, hypothesis);
}

std::vector<int> transport(const Theorem1Context& ctx, const GSet& u, const GSet& v,
                           const ExtTensor& ext, const FixedPointSet& fixed,
                           const GroupHom& w_from, const GroupHom& w_to,
                           const std::array<int, 3>& t) {
    {
        GroupHom moved = t_action_omega(ctx, t, w_from);
        for (int e : ctx.Z.elems)
            if (moved.image[e] != w_to.image[e])
                throw std::invalid_argument("^t omega differs from omega'");
    }
    ThetaData a = theta_map(ctx, u, v, ext, fixed, w_from);
    ThetaData b = theta_map(ctx, u, v, ext, fixed, w_to);

    auto build = [&](const std::array<int, 3>& tt) {
        const auto& gk = *ctx.GK;
        const auto& ggrp = *gk.group;
        int tgk = gk.encode(tt[0], tt[2]);
        int au = ctx.GH->encode(tt[0], tt[1]);
        int bv = ctx.HK->encode(tt[1], tt[2]);
        std::vector<int> where_u(u.size, -1), where_v(v.size, -1);
        for (size_t i = 0; i < b.u_fix.back.size(); ++i) where_u[b.u_fix.back[i]] = static_cast<int>(i);
        for (size_t i = 0; i < b.v_fix.back.size(); ++i) where_v[b.v_fix.back[i]] = static_cast<int>(i);

        std::vector<int> phi(a.domain.set.size);
        int nc = static_cast<int>(a.domain.cosets.reps.size());
        for (int c = 0; c < nc; ++c) {
            int n2 = ggrp.mul(a.domain.cosets.reps[c], ggrp.inv(tgk));
            for (int p = 0; p < a.small.tensor.set.size; ++p) {
                auto [iu, iv] = a.small.tensor.reps[p];
                int pu2 = where_u[u.act[au][a.u_fix.back[iu]]];
                int pv2 = where_v[v.act[bv][a.v_fix.back[iv]]];
                if (pu2 < 0 || pv2 < 0)
                    throw std::logic_error("transport image escapes the fixed sets");
                int q = b.small.tensor.orbit_of[pu2 * b.v_fix.set.size + pv2];
                phi[a.domain.encode(c, p)] = b.domain.locate(b.res_small, n2, q);
            }
        }
        return phi;
    };

    std::vector<int> phi = build(t);

    // Independence of the witness triple.
    for (const auto& tt : ctx.T.triples) {
        GroupHom moved = t_action_omega(ctx, tt, w_from);
        bool same = true;
        for (int e : ctx.Z.elems)
            if (moved.image[e] != w_to.image[e]) {
                same = false;
                break;
            }
        if (same && build(tt) != phi)
            throw std::logic_error("transport depends on the witness triple");
    }

    // Isomorphism of N-sets and compatibility with theta.
    std::vector<char> hit(b.domain.set.size, 0);
    for (int p : phi) {
        if (hit[p]) throw std::logic_error("transport is not injective");
        hit[p] = 1;
    }
    if (a.domain.set.size != b.domain.set.size)
        throw std::logic_error("transport domains differ in size");
    if (!is_equivariant(a.domain.set, b.domain.set, phi, ctx.N))
        throw std::logic_error("transport is not equivariant");
    for (int p = 0; p < a.domain.set.size; ++p)
        if (b.theta[phi[p]] != a.theta[p])
            throw std::logic_error("theta' o phi differs from theta");
    return phi;
}

}  // namespace brauerlab
