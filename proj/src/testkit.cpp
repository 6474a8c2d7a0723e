#include "brauerlab/testkit.hpp"

#include <chrono>
#include <map>
#include <set>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace brauerlab {

MarksTable marks(const GSet& u, const std::vector<Subgroup>& subgroups) {
    MarksTable t;
    t.counts.reserve(subgroups.size());
    for (const auto& s : subgroups) {
        int count = 0;
        for (int p = 0; p < u.size; ++p) {
            bool fixed = true;
            for (int g : s.elems)
                if (u.act[g][p] != p) {
                    fixed = false;
                    break;
                }
            if (fixed) ++count;
        }
        t.counts.push_back(count);
    }
    return t;
}

bool gsets_isomorphic(const GSet& u, const GSet& v,
                      const std::vector<Subgroup>& subgroups) {
    if (!(u.acting == v.acting)) throw std::invalid_argument("marks need a common action");
    return marks(u, subgroups).counts == marks(v, subgroups).counts;
}

bool gsets_isomorphic(const GSet& u, const GSet& v) {
    return gsets_isomorphic(u, v, all_subgroups(u.acting));
}

OracleTensor oracle_tensor(const ProductSubgroup& x, const ProductSubgroup& y,
                           const GSet& u, const GSet& v, const ProductPtr& gk) {
    const auto& hgrp = *x.amb->right;
    OracleTensor t;

    // Orbits of U x V under h.(u,v) = ((1,h)u, (h,1)v), from the definition.
    std::vector<std::pair<int, int>> movers;
    for (int h = 0; h < hgrp.order(); ++h)
        if (x.contains(FiniteGroup::kId, h) && y.contains(h, FiniteGroup::kId))
            movers.emplace_back(x.amb->encode(FiniteGroup::kId, h),
                                y.amb->encode(h, FiniteGroup::kId));
    int total = u.size * v.size;
    t.orbit_of.assign(total, -1);
    for (int start = 0; start < total; ++start) {
        if (t.orbit_of[start] >= 0) continue;
        int id = static_cast<int>(t.reps.size());
        t.reps.emplace_back(start / v.size, start % v.size);
        std::vector<int> queue{start};
        t.orbit_of[start] = id;
        for (size_t head = 0; head < queue.size(); ++head)
            for (auto [a, b] : movers) {
                int pu = queue[head] / v.size, pv = queue[head] % v.size;
                int q = u.act[a][pu] * v.size + v.act[b][pv];
                if (t.orbit_of[q] < 0) {
                    t.orbit_of[q] = id;
                    queue.push_back(q);
                }
            }
    }
    for (int g = 0; g < gk->left->order(); ++g)
        for (int k = 0; k < gk->right->order(); ++k)
            for (int h = 0; h < hgrp.order(); ++h)
                if (x.contains(g, h) && y.contains(h, k)) {
                    t.xy_members.push_back(gk->encode(g, k));
                    break;
                }
    return t;
}

GSet oracle_fixed_from_tensor(const OracleTensor& t, const ProductSubgroup& x,
                              const ProductSubgroup& y, const Subgroup& z, const GSet& u,
                              const GSet& v, const ProductPtr& gk) {
    const auto& hgrp = *x.amb->right;
    const auto& orbit = t.orbit_of;
    const auto& reps = t.reps;
    auto act_pair = [&](int g, int k, int point) {
        auto [pu, pv] = reps[point];
        for (int h = 0; h < hgrp.order(); ++h)
            if (x.contains(g, h) && y.contains(h, k))
                return orbit[u.act[x.amb->encode(g, h)][pu] * v.size +
                             v.act[y.amb->encode(h, k)][pv]];
        return -1;
    };

    const std::vector<int>& xy_members = t.xy_members;
    std::vector<int> n_members;
    for (int e : xy_members) {
        bool normalizes = true;
        for (int zz : z.elems)
            if (!z.contains(gk->group->conj(e, zz))) {
                normalizes = false;
                break;
            }
        if (normalizes) n_members.push_back(e);
    }
    Subgroup n(gk->group, std::move(n_members));

    // Pointwise Z-fixedness of the orbits.
    std::vector<int> fixed;
    for (int p = 0; p < static_cast<int>(reps.size()); ++p) {
        bool ok = true;
        for (int e : z.elems)
            if (act_pair(gk->first(e), gk->second(e), p) != p) {
                ok = false;
                break;
            }
        if (ok) fixed.push_back(p);
    }
    std::vector<int> where(reps.size(), -1);
    for (size_t i = 0; i < fixed.size(); ++i) where[fixed[i]] = static_cast<int>(i);

    GSet out;
    out.group = gk->group;
    out.acting = n;
    out.size = static_cast<int>(fixed.size());
    out.act.resize(gk->group->order());
    for (int e : n.elems) {
        auto& row = out.act[e];
        row.resize(out.size);
        for (int i = 0; i < out.size; ++i) {
            int img = act_pair(gk->first(e), gk->second(e), fixed[i]);
            if (img < 0 || where[img] < 0)
                throw std::logic_error("oracle: normalizer does not preserve fixed orbits");
            row[i] = where[img];
        }
    }
    return out;
}

GSet oracle_fixed_ext_tensor(const ProductSubgroup& x, const ProductSubgroup& y,
                             const Subgroup& z, const GSet& u, const GSet& v,
                             const ProductPtr& gk) {
    OracleTensor t = oracle_tensor(x, y, u, v, gk);
    return oracle_fixed_from_tensor(t, x, y, z, u, v, gk);
}

std::vector<AlgebraElement> oracle_center_idempotents(const Field& f, const Subgroup& s) {
    auto basis = center_basis(s);
    int dz = static_cast<int>(basis.size());
    double total = 1;
    for (int i = 0; i < dz; ++i) {
        total *= f.q();
        if (total > 1048576.0) throw std::length_error("center too large for the scan");
    }
    // Structure constants on class sums keep the scan quadratic per element.
    std::vector<std::vector<std::vector<Field::El>>> sc(dz);
    std::vector<int> class_rep(dz);
    for (int i = 0; i < dz; ++i) {
        sc[i].resize(dz);
        for (int j = 0; j < dz; ++j) {
            AlgebraElement prod = ae_mul(f, basis[i], basis[j]);
            std::vector<Field::El> coords(dz);
            for (int c = 0; c < dz; ++c) {
                int rep = -1;
                for (int e = 0; e < s.order(); ++e)
                    if (basis[c].coeffs[e]) {
                        rep = e;
                        break;
                    }
                coords[c] = prod.coeffs[rep];
            }
            sc[i][j] = std::move(coords);
        }
    }
    std::vector<AlgebraElement> found;
    std::vector<Field::El> vcur(dz, 0);
    while (true) {
        std::vector<Field::El> sq(dz, 0);
        for (int i = 0; i < dz; ++i) {
            if (!vcur[i]) continue;
            for (int j = 0; j < dz; ++j) {
                if (!vcur[j]) continue;
                const Field::El* mul = f.mul_row(f.mul(vcur[i], vcur[j]));
                for (int c = 0; c < dz; ++c) sq[c] = f.add(sq[c], mul[sc[i][j][c]]);
            }
        }
        if (sq == vcur) {
            AlgebraElement e(s);
            for (int i = 0; i < dz; ++i)
                if (vcur[i]) e = ae_add(f, e, ae_scale(f, vcur[i], basis[i]));
            found.push_back(std::move(e));
        }
        int i = 0;
        while (i < dz) {
            if (++vcur[i] < f.q()) break;
            vcur[i] = 0;
            ++i;
        }
        if (i == dz) break;
    }
    return found;
}

std::vector<AlgebraElement> oracle_primitive_idempotents(const Field& f, const Subgroup& s) {
    auto all = oracle_center_idempotents(f, s);
    std::vector<AlgebraElement> out;
    for (const auto& e : all) {
        if (e.is_zero()) continue;
        bool primitive = true;
        for (const auto& e2 : all) {
            if (e2.is_zero() || e2 == e) continue;
            if (ae_mul(f, e2, e) == e2) primitive = false;  // e2 < e splits it
        }
        if (primitive) out.push_back(e);
    }
    return out;
}

namespace {

struct PairTask {
    int gi, hi, ki;       // indices into the group list
    std::string gn, hn, kn;
    ProductPtr gh, hk, gk;
    ProductSubgroup x, y;
    int xi = 0, yi = 0;  // class indices, for instance labels
};

struct PairOutcome {
    long t1_instances = 0, t1_hypothesis_met = 0, t1_verified = 0, t1_oracle_checked = 0;
    long stab_points_checked = 0, stab_failures = 0;
    long biset_instances = 0, biset_failures = 0;
    std::map<int, Theorem2Counts> t2;
    std::vector<std::string> defects;
};

std::string instance_tag(const PairTask& task, int zi, int ui, int vi) {
    return task.gn + "," + task.hn + "," + task.kn + " X#" + std::to_string(task.xi) +
           " Y#" + std::to_string(task.yi) + " Z#" + std::to_string(zi) + " U#" +
           std::to_string(ui) + " V#" + std::to_string(vi);
}

PairOutcome run_pair(const PairTask& task, const SweepConfig& config) {
    PairOutcome out;
    const auto& x = task.x;
    const auto& y = task.y;
    const auto& hgrp = *task.gh->right;
    auto xy = compose(x, y, task.gk);

    auto zcls = subgroup_class_reps(xy.sub, all_subgroups(xy.sub));
    auto ucls = subgroup_class_reps(x.sub, all_subgroups(x.sub));
    auto vcls = subgroup_class_reps(y.sub, all_subgroups(y.sub));

    struct ZData {
        Theorem1Context ctx;
        std::vector<Subgroup> n_class_reps;
    };
    std::vector<ZData> zdata;
    for (const auto& z : zcls) {
        ZData d{make_theorem1_context(x, y, z, task.gk), {}};
        d.n_class_reps = subgroup_class_reps(d.ctx.N, all_subgroups(d.ctx.N));
        zdata.push_back(std::move(d));
    }

    // Linking actions per member of X*Y (encoded pairs in GH x HK).
    std::vector<std::vector<std::pair<int, int>>> links(xy.sub.order());
    for (int i = 0; i < xy.sub.order(); ++i) {
        int e = xy.sub.elems[i];
        int g = task.gk->first(e), k = task.gk->second(e);
        for (int h = 0; h < hgrp.order(); ++h)
            if (x.contains(g, h) && y.contains(h, k))
                links[i].emplace_back(x.amb->encode(g, h), y.amb->encode(h, k));
    }

    bool both_full = x.order() == task.gh->group->order() &&
                     y.order() == task.hk->group->order();
    std::vector<Subgroup> gk_class_reps;
    if (both_full)
        gk_class_reps = subgroup_class_reps(Subgroup::full(task.gk->group),
                                            all_subgroups(task.gk->group));

    std::vector<FieldPtr> fields;
    for (int p : config.primes) fields.push_back(Field::make(p));

    for (size_t ui = 0; ui < ucls.size(); ++ui) {
        GSet u = coset_gset(x.sub, ucls[ui]);
        for (size_t vi = 0; vi < vcls.size(); ++vi) {
            GSet v = coset_gset(y.sub, vcls[vi]);
            ExtTensor ext = ext_tensor_set(x, y, u, v, task.gk);

            // Stabilizers of simple tensors: (X*Y)_{u(x)v} = X_u * Y_v,
            // membership compared elementwise over X*Y.
            for (int pu = 0; pu < u.size; ++pu)
                for (int pv = 0; pv < v.size; ++pv) {
                    int point = ext.tensor.orbit_of[pu * v.size + pv];
                    bool good = true;
                    for (int i = 0; i < xy.sub.order() && good; ++i) {
                        bool lhs = ext.tensor.set.act[xy.sub.elems[i]][point] == point;
                        bool rhs = false;
                        for (auto [a, b] : links[i])
                            if (u.act[a][pu] == pu && v.act[b][pv] == pv) {
                                rhs = true;
                                break;
                            }
                        good = lhs == rhs;
                    }
                    ++out.stab_points_checked;
                    if (!good) {
                        ++out.stab_failures;
                        out.defects.push_back("stabilizer mismatch at " +
                                              instance_tag(task, -1, (int)ui, (int)vi) +
                                              " point " + std::to_string(point));
                    }
                }

            // Full products: the extended tensor reduces to the biset tensor.
            if (both_full) {
                TensorGSet biset = biset_tensor(u, task.gh, v, task.hk, task.gk);
                ++out.biset_instances;
                GSet ext_full = ext.tensor.set;
                ext_full.acting = Subgroup::full(task.gk->group);
                if (!gsets_isomorphic(ext_full, biset.set, gk_class_reps)) {
                    ++out.biset_failures;
                    out.defects.push_back("biset reduction failed at " +
                                          instance_tag(task, -1, (int)ui, (int)vi));
                }
            }

            int hypothesis = -1;
            OracleTensor otensor;
            bool otensor_built = false;

            std::vector<FModule> mu_cache(fields.size()), mv_cache(fields.size());
            std::vector<ExtTensorMod> big_cache(fields.size());
            std::vector<char> big_built(fields.size(), 0);
            std::vector<Theorem2Workspace> ws(fields.size());

            for (size_t zi = 0; zi < zdata.size(); ++zi) {
                const auto& zd = zdata[zi];
                FixedPointSet fixed = fixed_points(ext.tensor.set, zd.ctx.Z);
                if (config.run_theorem1) {
                    Theorem1Report rep =
                        verify_theorem1(zd.ctx, u, v, ext, fixed, hypothesis);
                    hypothesis = rep.hypothesis_met ? 1 : 0;
                    ++out.t1_instances;
                    if (rep.hypothesis_met) ++out.t1_hypothesis_met;
                    if (rep.hypothesis_met && rep.verdict) ++out.t1_verified;
                    if (rep.defect)
                        out.defects.push_back("theorem1 defect at " +
                                              instance_tag(task, (int)zi, (int)ui, (int)vi) +
                                              ": " + rep.counterexample);
                    if (!otensor_built) {
                        otensor = oracle_tensor(x, y, u, v, task.gk);
                        otensor_built = true;
                    }
                    GSet oracle =
                        oracle_fixed_from_tensor(otensor, x, y, zd.ctx.Z, u, v, task.gk);
                    ++out.t1_oracle_checked;
                    if (!(oracle.acting == fixed.set.acting) ||
                        !gsets_isomorphic(oracle, fixed.set, zd.n_class_reps)) {
                        out.defects.push_back("fixed-point oracle mismatch at " +
                                              instance_tag(task, (int)zi, (int)ui, (int)vi));
                    }
                }
                if (config.run_theorem2) {
                    for (size_t pi = 0; pi < fields.size(); ++pi) {
                        int p = config.primes[pi];
                        if (!is_p_group(zd.ctx.Z, p)) continue;
                        if (!big_built[pi]) {
                            mu_cache[pi] = linearize(u, fields[pi]);
                            mv_cache[pi] = linearize(v, fields[pi]);
                            big_cache[pi] =
                                ext_tensor_mod_from_set(ext, mu_cache[pi], mv_cache[pi]);
                            big_built[pi] = 1;
                        }
                        auto& counts = out.t2[p];
                        counts.prime = p;
                        Theorem2Report rep2 =
                            verify_theorem2(zd.ctx, mu_cache[pi], mv_cache[pi], p,
                                            config.seed, &big_cache[pi], 0, &ws[pi]);
                        ++counts.instances;
                        if (rep2.hypothesis_met) ++counts.hypothesis_met;
                        if (rep2.hypothesis_met && rep2.verdict) ++counts.verified;
                        if (rep2.defect)
                            out.defects.push_back(
                                "theorem2 (p=" + std::to_string(p) + ") defect at " +
                                instance_tag(task, (int)zi, (int)ui, (int)vi) + ": " +
                                rep2.note);
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

std::string SweepReport::to_json() const {
    nlohmann::ordered_json j;
    j["config"]["groups"] = config.groups;
    j["config"]["primes"] = config.primes;
    j["config"]["theorem1"] = config.run_theorem1;
    j["config"]["theorem2"] = config.run_theorem2;
    j["config"]["max_product_order"] = config.max_product_order;
    j["config"]["seed"] = config.seed;
    j["pairs"] = pairs;
    j["theorem1"]["instances"] = t1_instances;
    j["theorem1"]["hypothesis_met"] = t1_hypothesis_met;
    j["theorem1"]["verified"] = t1_verified;
    j["theorem1"]["oracle_checked"] = t1_oracle_checked;
    j["stabilizer_lemma"]["points_checked"] = stab_points_checked;
    j["stabilizer_lemma"]["failures"] = stab_failures;
    j["biset_reduction"]["instances"] = biset_instances;
    j["biset_reduction"]["failures"] = biset_failures;
    j["theorem2"] = nlohmann::ordered_json::array();
    for (const auto& t : t2) {
        nlohmann::ordered_json e;
        e["prime"] = t.prime;
        e["instances"] = t.instances;
        e["hypothesis_met"] = t.hypothesis_met;
        e["verified"] = t.verified;
        j["theorem2"].push_back(std::move(e));
    }
    j["defects"] = defects;
    return j.dump(2);
}

SweepReport run_sweep(const SweepConfig& config, const Catalog& catalog) {
    SweepReport report;
    report.config = config;

    std::vector<GroupPtr> groups;
    for (const auto& name : config.groups) groups.push_back(catalog.group(name));

    // Shared ambient products per ordered pair of catalog indices.
    int ng = static_cast<int>(groups.size());
    std::vector<std::vector<ProductPtr>> prod(ng, std::vector<ProductPtr>(ng));
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < ng; ++j) {
            if (groups[i]->order() * groups[j]->order() > config.max_product_order)
                throw std::length_error("product order exceeds the sweep bound");
            prod[i][j] = Product::make(groups[i], groups[j]);
        }
    std::vector<std::vector<std::vector<Subgroup>>> subs_all(
        ng, std::vector<std::vector<Subgroup>>(ng));
    std::vector<std::vector<std::vector<Subgroup>>> xcls(
        ng, std::vector<std::vector<Subgroup>>(ng));
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < ng; ++j) {
            subs_all[i][j] = all_subgroups(prod[i][j]->group);
            xcls[i][j] = subgroup_class_reps(Subgroup::full(prod[i][j]->group),
                                             subs_all[i][j]);
        }

    // Enumerate (X, Y) pairs up to simultaneous conjugacy: X over G x H
    // classes, then Y over all subgroups of H x K modulo the stabilizer
    // action p2(N(X)) x K (classes of Y can split into several orbits).
    std::vector<PairTask> tasks;
    for (int gi = 0; gi < ng; ++gi)
        for (int hi = 0; hi < ng; ++hi)
            for (int ki = 0; ki < ng; ++ki) {
                const auto& gh = prod[gi][hi];
                const auto& hk = prod[hi][ki];
                const auto& gk = prod[gi][ki];
                const auto& xlist = xcls[gi][hi];
                const auto& ylist = subs_all[hi][ki];
                for (size_t xi = 0; xi < xlist.size(); ++xi) {
                    ProductSubgroup x(gh, xlist[xi]);
                    Subgroup nx = normalizer(Subgroup::full(gh->group), x.sub);
                    std::set<int> sproj;
                    for (int e : nx.elems) sproj.insert(gh->second(e));
                    for (size_t yi = 0; yi < ylist.size(); ++yi) {
                        const Subgroup& ysub = ylist[yi];
                        // Keep Y only when minimal in its stabilizer orbit.
                        bool minimal = true;
                        for (int h : sproj) {
                            for (int k = 0; k < groups[ki]->order() && minimal; ++k) {
                                Subgroup c = conjugate_subgroup(hk->encode(h, k), ysub);
                                if (c.elems < ysub.elems) minimal = false;
                            }
                            if (!minimal) break;
                        }
                        if (!minimal) continue;
                        PairTask t;
                        t.gi = gi;
                        t.hi = hi;
                        t.ki = ki;
                        t.gn = config.groups[gi];
                        t.hn = config.groups[hi];
                        t.kn = config.groups[ki];
                        t.gh = gh;
                        t.hk = hk;
                        t.gk = gk;
                        t.x = x;
                        t.y = ProductSubgroup(hk, ysub);
                        t.xi = static_cast<int>(xi);
                        t.yi = static_cast<int>(yi);
                        tasks.push_back(std::move(t));
                    }
                }
            }
    report.pairs = static_cast<long>(tasks.size());

    std::vector<PairOutcome> outcomes(tasks.size());
    auto phase_start = std::chrono::steady_clock::now();

    int jobs = config.jobs;
#ifdef _OPENMP
    if (jobs <= 0) jobs = omp_get_max_threads();
#else
    jobs = 1;
#endif
    if (jobs == 1) {
        for (size_t i = 0; i < tasks.size(); ++i) outcomes[i] = run_pair(tasks[i], config);
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
#endif
        for (long i = 0; i < static_cast<long>(tasks.size()); ++i)
            outcomes[i] = run_pair(tasks[i], config);
    }

    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                   phase_start)
                         .count();
    report.t1_seconds = elapsed;
    report.t2_seconds = elapsed;

    std::map<int, Theorem2Counts> t2merge;
    for (const auto& o : outcomes) {
        report.t1_instances += o.t1_instances;
        report.t1_hypothesis_met += o.t1_hypothesis_met;
        report.t1_verified += o.t1_verified;
        report.t1_oracle_checked += o.t1_oracle_checked;
        report.stab_points_checked += o.stab_points_checked;
        report.stab_failures += o.stab_failures;
        report.biset_instances += o.biset_instances;
        report.biset_failures += o.biset_failures;
        for (const auto& [p, c] : o.t2) {
            auto& m = t2merge[p];
            m.prime = p;
            m.instances += c.instances;
            m.hypothesis_met += c.hypothesis_met;
            m.verified += c.verified;
        }
        for (const auto& d : o.defects) report.defects.push_back(d);
    }
    for (const auto& [p, c] : t2merge) report.t2.push_back(c);
    return report;
}

}  // namespace brauerlab
