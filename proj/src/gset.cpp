#include "brauerlab/gset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace brauerlab {

void GSet::validate() const {
    const auto& ident = act[FiniteGroup::kId];
    for (int u = 0; u < size; ++u)
        if (ident[u] != u) throw std::logic_error("identity does not act trivially");
    for (int g : acting.elems)
        for (int h : acting.elems) {
            int gh = group->mul(g, h);
            for (int u = 0; u < size; ++u)
                if (act[gh][u] != act[g][act[h][u]])
                    throw std::logic_error("action is not multiplicative");
        }
}

GSet regular_gset(const Subgroup& s) {
    GSet u;
    u.group = s.parent;
    u.acting = s;
    u.size = s.order();
    u.act.resize(s.parent->order());
    for (int g : s.elems) {
        auto& row = u.act[g];
        row.resize(u.size);
        for (int i = 0; i < u.size; ++i) row[i] = s.pos(s.parent->mul(g, s.elems[i]));
    }
    return u;
}

GSet one_point_gset(const Subgroup& s) {
    GSet u;
    u.group = s.parent;
    u.acting = s;
    u.size = 1;
    u.act.resize(s.parent->order());
    for (int g : s.elems) u.act[g] = {0};
    return u;
}

GSet empty_gset(const Subgroup& s) {
    GSet u;
    u.group = s.parent;
    u.acting = s;
    u.size = 0;
    u.act.assign(s.parent->order(), {});
    return u;
}

GSet coset_gset(const Subgroup& big, const Subgroup& small) {
    if (!big.contains_subgroup(small))
        throw std::invalid_argument("coset space requires small <= big");
    CosetDecomposition dec = left_cosets(big, small);
    GSet u;
    u.group = big.parent;
    u.acting = big;
    u.size = static_cast<int>(dec.reps.size());
    u.act.resize(big.parent->order());
    for (int g : big.elems) {
        auto& row = u.act[g];
        row.resize(u.size);
        for (int c = 0; c < u.size; ++c)
            row[c] = dec.coset_of[big.parent->mul(g, dec.reps[c])];
    }
    for (int c = 0; c < u.size; ++c)
        u.labels.push_back("g" + std::to_string(dec.reps[c]) + "H");
    return u;
}

GSet disjoint_union(const GSet& a, const GSet& b) {
    if (a.group != b.group || !(a.acting == b.acting))
        throw std::invalid_argument("disjoint union over different actions");
    GSet u;
    u.group = a.group;
    u.acting = a.acting;
    u.size = a.size + b.size;
    u.act.resize(a.group->order());
    for (int g : u.acting.elems) {
        auto& row = u.act[g];
        row.resize(u.size);
        for (int i = 0; i < a.size; ++i) row[i] = a.act[g][i];
        for (int i = 0; i < b.size; ++i) row[a.size + i] = a.size + b.act[g][i];
    }
    u.labels = a.labels;
    u.labels.resize(a.size);
    auto bl = b.labels;
    bl.resize(b.size);
    for (auto& s : bl) u.labels.push_back(s);
    return u;
}

GSet restrict_gset(const GSet& u, const Subgroup& s) {
    if (!u.acting.contains_subgroup(s))
        throw std::invalid_argument("restriction target is not a subgroup of the action");
    GSet r = u;
    r.acting = s;
    return r;
}

std::vector<std::vector<int>> orbits(const GSet& u) {
    std::vector<int> owner(u.size, -1);
    std::vector<std::vector<int>> out;
    for (int p = 0; p < u.size; ++p) {
        if (owner[p] >= 0) continue;
        std::vector<int> orb{p};
        owner[p] = static_cast<int>(out.size());
        for (size_t h = 0; h < orb.size(); ++h)
            for (int g : u.acting.elems) {
                int q = u.act[g][orb[h]];
                if (owner[q] < 0) {
                    owner[q] = owner[p];
                    orb.push_back(q);
                }
            }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

Subgroup stabilizer(const GSet& u, int point) {
    std::vector<int> fix;
    for (int g : u.acting.elems)
        if (u.act[g][point] == point) fix.push_back(g);
    return Subgroup(u.group, std::move(fix));
}

FixedPointSet fixed_points(const GSet& u, const Subgroup& s) {
    if (!u.acting.contains_subgroup(s))
        throw std::invalid_argument("fixed points require S <= acting subgroup");
    FixedPointSet out;
    for (int p = 0; p < u.size; ++p) {
        bool fixed = true;
        for (int g : s.elems)
            if (u.act[g][p] != p) {
                fixed = false;
                break;
            }
        if (fixed) out.back.push_back(p);
    }
    Subgroup n = normalizer(u.acting, s);
    std::vector<int> where(u.size, -1);
    for (size_t i = 0; i < out.back.size(); ++i) where[out.back[i]] = static_cast<int>(i);
    GSet& f = out.set;
    f.group = u.group;
    f.acting = n;
    f.size = static_cast<int>(out.back.size());
    f.act.resize(u.group->order());
    for (int g : n.elems) {
        auto& row = f.act[g];
        row.resize(f.size);
        for (int i = 0; i < f.size; ++i) {
            int q = u.act[g][out.back[i]];
            if (where[q] < 0) throw std::logic_error("normalizer does not preserve fixed points");
            row[i] = where[q];
        }
    }
    for (int i = 0; i < f.size; ++i)
        f.labels.push_back(out.back[i] < static_cast<int>(u.labels.size())
                               ? u.labels[out.back[i]]
                               : "p" + std::to_string(out.back[i]));
    return out;
}

int InducedGSet::locate(const GSet& u, int n, int point) const {
    int c = cosets.coset_of[n];
    const auto& g = *u.group;
    int m = g.mul(g.inv(cosets.reps[c]), n);
    return encode(c, u.act[m][point]);
}

InducedGSet induce(const Subgroup& big, const GSet& u) {
    if (!big.contains_subgroup(u.acting))
        throw std::invalid_argument("induction requires acting <= big");
    InducedGSet out;
    out.cosets = left_cosets(big, u.acting);
    out.fiber_size = u.size;
    int nc = static_cast<int>(out.cosets.reps.size());
    GSet& s = out.set;
    s.group = u.group;
    s.acting = big;
    s.size = nc * u.size;
    s.act.resize(u.group->order());
    const auto& g = *u.group;
    for (int b : big.elems) {
        auto& row = s.act[b];
        row.resize(s.size);
        for (int c = 0; c < nc; ++c) {
            int t = g.mul(b, out.cosets.reps[c]);
            int c2 = out.cosets.coset_of[t];
            int m = g.mul(g.inv(out.cosets.reps[c2]), t);
            for (int p = 0; p < u.size; ++p)
                row[out.encode(c, p)] = out.encode(c2, u.act[m][p]);
        }
    }
    for (int c = 0; c < nc; ++c)
        for (int p = 0; p < u.size; ++p)
            s.labels.push_back("g" + std::to_string(out.cosets.reps[c]) + "(x)p" +
                               std::to_string(p));
    return out;
}

std::vector<int> lift_induced_map(const InducedGSet& ind, const GSet& u, const GSet& v,
                                  const std::vector<int>& phi) {
    std::vector<int> out(ind.set.size);
    int nc = static_cast<int>(ind.cosets.reps.size());
    for (int c = 0; c < nc; ++c)
        for (int p = 0; p < u.size; ++p)
            out[ind.encode(c, p)] = v.act[ind.cosets.reps[c]][phi[p]];
    return out;
}

bool is_equivariant(const GSet& src, const GSet& tgt, const std::vector<int>& map,
                    const Subgroup& over) {
    for (int g : over.elems)
        for (int p = 0; p < src.size; ++p)
            if (map[src.act[g][p]] != tgt.act[g][map[p]]) return false;
    return true;
}

bool induced_map_injectivity_check(const Subgroup& big, const GSet& u, const GSet& v,
                                   const std::vector<int>& phi) {
    if (!is_equivariant(u, restrict_gset(v, u.acting), phi, u.acting))
        throw std::invalid_argument("phi is not equivariant");
    // (1) injectivity of phi
    std::set<int> vals(phi.begin(), phi.end());
    if (static_cast<int>(vals.size()) != u.size) return false;
    // (2) g*phi(u) = phi(u') forces g into the small subgroup
    for (int g : big.elems) {
        if (u.acting.contains(g)) continue;
        for (int p = 0; p < u.size; ++p)
            if (vals.count(v.act[g][phi[p]])) return false;
    }
    InducedGSet ind = induce(big, u);
    auto lifted = lift_induced_map(ind, u, v, phi);
    std::set<int> img(lifted.begin(), lifted.end());
    if (static_cast<int>(img.size()) != ind.set.size)
        throw std::logic_error("induced map failed to be injective despite conditions");
    return true;
}

namespace {

/// Orbit partition of U x V under a set of (a,b) pair actions; returns
/// orbit ids with minimal-index representatives.
struct PairOrbits {
    std::vector<int> orbit_of;
    std::vector<std::pair<int, int>> reps;
};

PairOrbits pair_orbits(const GSet& u, const GSet& v,
                       const std::vector<std::pair<int, int>>& movers) {
    int total = u.size * v.size;
    std::vector<int> orbit(total, -1);
    PairOrbits out;
    for (int start = 0; start < total; ++start) {
        if (orbit[start] >= 0) continue;
        int id = static_cast<int>(out.reps.size());
        out.reps.emplace_back(start / v.size, start % v.size);
        std::vector<int> queue{start};
        orbit[start] = id;
        for (size_t h = 0; h < queue.size(); ++h) {
            int pu = queue[h] / v.size, pv = queue[h] % v.size;
            for (auto [a, b] : movers) {
                int q = u.act[a][pu] * v.size + v.act[b][pv];
                if (orbit[q] < 0) {
                    orbit[q] = id;
                    queue.push_back(q);
                }
            }
        }
    }
    out.orbit_of = std::move(orbit);
    return out;
}

}  // namespace

TensorGSet biset_tensor(const GSet& u, const ProductPtr& gh, const GSet& v,
                        const ProductPtr& hk, const ProductPtr& gk) {
    if (gh->right != hk->left) throw std::invalid_argument("middle groups do not match");
    if (u.group != gh->group || v.group != hk->group)
        throw std::invalid_argument("tensor factors live in wrong ambients");
    const auto& hgrp = *gh->right;
    std::vector<std::pair<int, int>> movers;
    for (int h = 0; h < hgrp.order(); ++h)
        movers.emplace_back(gh->encode(FiniteGroup::kId, h), hk->encode(h, FiniteGroup::kId));
    PairOrbits po = pair_orbits(u, v, movers);

    TensorGSet t;
    t.orbit_of = po.orbit_of;
    t.reps = po.reps;
    GSet& s = t.set;
    s.group = gk->group;
    s.acting = Subgroup::full(gk->group);
    s.size = static_cast<int>(po.reps.size());
    s.act.resize(gk->group->order());
    for (int e = 0; e < gk->group->order(); ++e) {
        int g = gk->first(e), k = gk->second(e);
        int a = gh->encode(g, FiniteGroup::kId);
        int b = hk->encode(FiniteGroup::kId, k);
        auto& row = s.act[e];
        row.resize(s.size);
        for (int p = 0; p < s.size; ++p) {
            auto [pu, pv] = t.reps[p];
            row[p] = t.orbit_of[u.act[a][pu] * v.size + v.act[b][pv]];
        }
    }
    for (int p = 0; p < s.size; ++p)
        s.labels.push_back("u" + std::to_string(t.reps[p].first) + "(x)v" +
                           std::to_string(t.reps[p].second));
    return t;
}

ExtTensor ext_tensor_set(const ProductSubgroup& x, const ProductSubgroup& y,
                         const GSet& u, const GSet& v, const ProductPtr& gk,
                         bool check) {
    if (x.amb->right != y.amb->left) throw std::invalid_argument("middle groups do not match");
    if (u.group != x.amb->group || !(u.acting == x.sub))
        throw std::invalid_argument("U must be an X-set");
    if (v.group != y.amb->group || !(v.acting == y.sub))
        throw std::invalid_argument("V must be a Y-set");

    ExtTensor out;
    out.link = link_data(x, y);
    out.xy = compose(x, y, gk);

    std::vector<std::pair<int, int>> movers;
    for (int h : out.link.kXY.elems)
        movers.emplace_back(x.amb->encode(FiniteGroup::kId, h),
                            y.amb->encode(h, FiniteGroup::kId));
    PairOrbits po = pair_orbits(u, v, movers);

    TensorGSet& t = out.tensor;
    t.orbit_of = po.orbit_of;
    t.reps = po.reps;
    GSet& s = t.set;
    s.group = gk->group;
    s.acting = out.xy.sub;
    s.size = static_cast<int>(po.reps.size());
    s.act.resize(gk->group->order());

    const auto& hgrp = *x.amb->right;
    for (int e : out.xy.sub.elems) {
        int g = gk->first(e), k = gk->second(e);
        int h0 = -1;
        for (int h = 0; h < hgrp.order(); ++h)
            if (x.contains(g, h) && y.contains(h, k)) {
                h0 = h;
                break;
            }
        if (h0 < 0) throw std::logic_error("composition member without linking element");
        int a = x.amb->encode(g, h0);
        int b = y.amb->encode(h0, k);
        auto& row = s.act[e];
        row.resize(s.size);
        for (int p = 0; p < s.size; ++p) {
            auto [pu, pv] = t.reps[p];
            row[p] = t.orbit_of[u.act[a][pu] * v.size + v.act[b][pv]];
        }
    }
    for (int p = 0; p < s.size; ++p)
        s.labels.push_back("u" + std::to_string(t.reps[p].first) + "(x)v" +
                           std::to_string(t.reps[p].second));

    if (check) {
        // Independence of linking element and of orbit representative.
        for (int e : out.xy.sub.elems) {
            int g = gk->first(e), k = gk->second(e);
            for (int pu = 0; pu < u.size; ++pu)
                for (int pv = 0; pv < v.size; ++pv) {
                    int expect = s.act[e][t.orbit_of[pu * v.size + pv]];
                    for (int h = 0; h < hgrp.order(); ++h) {
                        if (!x.contains(g, h) || !y.contains(h, k)) continue;
                        int a = x.amb->encode(g, h);
                        int b = y.amb->encode(h, k);
                        int got = t.orbit_of[u.act[a][pu] * v.size + v.act[b][pv]];
                        if (got != expect)
                            throw std::logic_error(
                                "extended tensor action is not well-defined");
                    }
                }
        }
    }
    return out;
}

std::vector<int> factor_through_ext_tensor(const ProductSubgroup& x,
                                           const ProductSubgroup& y, const GSet& u,
                                           const GSet& v, const ExtTensor& tensor,
                                           const GSet& w, const std::vector<int>& phi) {
    const auto& hgrp = *x.amb->right;
    const auto& gk = tensor.xy.amb;
    for (int e : tensor.xy.sub.elems) {
        int g = gk->first(e), k = gk->second(e);
        for (int h = 0; h < hgrp.order(); ++h) {
            if (!x.contains(g, h) || !y.contains(h, k)) continue;
            int a = x.amb->encode(g, h);
            int b = y.amb->encode(h, k);
            for (int pu = 0; pu < u.size; ++pu)
                for (int pv = 0; pv < v.size; ++pv) {
                    int lhs = w.act[e][phi[pu * v.size + pv]];
                    int rhs = phi[u.act[a][pu] * v.size + v.act[b][pv]];
                    if (lhs != rhs)
                        throw std::invalid_argument(
                            "balance condition violated at (g,k,h,u,v)=(" +
                            std::to_string(g) + "," + std::to_string(k) + "," +
                            std::to_string(h) + "," + std::to_string(pu) + "," +
                            std::to_string(pv) + ")");
                }
        }
    }
    std::vector<int> bar(tensor.tensor.set.size);
    for (int p = 0; p < tensor.tensor.set.size; ++p) {
        auto [pu, pv] = tensor.tensor.reps[p];
        bar[p] = phi[pu * v.size + pv];
    }
    // Constancy on orbits is implied by balance at (1,1); re-check cheaply.
    for (int pu = 0; pu < u.size; ++pu)
        for (int pv = 0; pv < v.size; ++pv)
            if (bar[tensor.tensor.orbit_of[pu * v.size + pv]] != phi[pu * v.size + pv])
                throw std::logic_error("factorization is not constant on orbits");
    return bar;
}

ProductSubgroup stabilizer_of_tensor(const ProductSubgroup& x, const ProductSubgroup& y,
                                     const GSet& u, const GSet& v, const ExtTensor& t,
                                     int pu, int pv) {
    int point = t.tensor.orbit_of[pu * v.size + pv];
    Subgroup direct = stabilizer(t.tensor.set, point);
    ProductSubgroup lhs(t.xy.amb, direct);

    Subgroup su = stabilizer(u, pu);
    Subgroup sv = stabilizer(v, pv);
    ProductSubgroup xu(x.amb, su), yv(y.amb, sv);
    ProductSubgroup rhs = compose(xu, yv, t.xy.amb);
    if (!(lhs == rhs))
        throw std::logic_error("stabilizer of simple tensor differs from X_u * Y_v");
    return rhs;
}

}  // namespace brauerlab
