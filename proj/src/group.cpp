#include "brauerlab/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace brauerlab {

namespace {

std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
    // (a*b)(x) = a(b(x))
    std::vector<int> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

}  // namespace

int FiniteGroup::element_order(int x) const {
    int ord = 1, y = x;
    while (y != kId) {
        y = mul(y, x);
        ++ord;
    }
    return ord;
}

GroupPtr FiniteGroup::from_permutations(int degree,
                                        const std::vector<std::vector<int>>& generators,
                                        std::string name, int max_order) {
    if (degree < 1) throw std::invalid_argument("degree must be positive");
    for (const auto& g : generators) {
        if (static_cast<int>(g.size()) != degree)
            throw std::invalid_argument("generator degree mismatch");
        std::vector<char> seen(degree, 0);
        for (int v : g) {
            if (v < 0 || v >= degree || seen[v])
                throw std::invalid_argument("generator is not a bijection");
            seen[v] = 1;
        }
    }

    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);

    // Breadth-first closure from the identity, generators in input order.
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : generators) {
            auto prod = compose_perm(elems[head], g);
            if (index.emplace(prod, static_cast<int>(elems.size())).second) {
                elems.push_back(std::move(prod));
                if (static_cast<int>(elems.size()) > max_order)
                    throw std::length_error("group closure exceeds max order " +
                                            std::to_string(max_order));
            }
        }
    }

    int n = static_cast<int>(elems.size());
    std::vector<int> mul(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            mul[a * n + b] = index.at(compose_perm(elems[a], elems[b]));

    std::vector<int> gens;
    for (const auto& g : generators) gens.push_back(index.at(g));

    return from_tables(std::move(mul), std::move(gens), std::move(name));
}

GroupPtr FiniteGroup::from_tables(std::vector<int> mul, std::vector<int> gens,
                                  std::string name, std::vector<std::string> labels) {
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    int n = 1;
    while (n * n < static_cast<int>(mul.size())) ++n;
    if (n * n != static_cast<int>(mul.size()))
        throw std::invalid_argument("multiplication table is not square");
    g->n_ = n;
    g->mul_ = std::move(mul);
    g->gens_ = std::move(gens);
    g->name_ = std::move(name);
    g->labels_ = std::move(labels);
    g->inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (g->mul(a, b) == kId && g->mul(b, a) == kId) {
                g->inv_[a] = b;
                break;
            }
        }
        if (g->inv_[a] < 0) throw std::invalid_argument("element without inverse");
    }
    if (n <= 64) g->validate();
    return g;
}

GroupPtr FiniteGroup::trivial() {
    static GroupPtr t = from_tables({0}, {}, "C1");
    return t;
}

void FiniteGroup::validate() const {
    for (int a = 0; a < n_; ++a) {
        if (mul(kId, a) != a || mul(a, kId) != a)
            throw std::logic_error("identity is not two-sided");
        if (mul(a, inv(a)) != kId || mul(inv(a), a) != kId)
            throw std::logic_error("inverse table broken");
    }
    if (n_ <= 64) {
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw std::logic_error("multiplication is not associative");
    }
    // Generators must generate.
    std::vector<char> seen(n_, 0);
    seen[kId] = 1;
    std::vector<int> queue{kId};
    for (size_t h = 0; h < queue.size(); ++h)
        for (int g : gens_) {
            int y = mul(queue[h], g);
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    if (static_cast<int>(queue.size()) != n_)
        throw std::logic_error("generators do not generate the group");
}

Subgroup::Subgroup(GroupPtr p, std::vector<int> members) : parent(std::move(p)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    elems = std::move(members);
    int n = parent->order();
    mask_.assign((n + 63) / 64, 0);
    pos_.assign(n, -1);
    for (size_t i = 0; i < elems.size(); ++i) {
        int x = elems[i];
        if (x < 0 || x >= n) throw std::invalid_argument("element id out of range");
        mask_[static_cast<size_t>(x) >> 6] |= uint64_t{1} << (x & 63);
        pos_[x] = static_cast<int>(i);
    }
}

bool Subgroup::contains_subgroup(const Subgroup& other) const {
    for (int x : other.elems)
        if (!contains(x)) return false;
    return true;
}

bool Subgroup::operator==(const Subgroup& other) const {
    return parent == other.parent && elems == other.elems;
}

Subgroup Subgroup::full(GroupPtr g) {
    std::vector<int> all(g->order());
    std::iota(all.begin(), all.end(), 0);
    return Subgroup(std::move(g), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr g) { return Subgroup(std::move(g), {FiniteGroup::kId}); }

Subgroup Subgroup::closure(GroupPtr g, const std::vector<int>& gens) {
    std::vector<char> seen(g->order(), 0);
    seen[FiniteGroup::kId] = 1;
    std::vector<int> queue{FiniteGroup::kId};
    for (size_t h = 0; h < queue.size(); ++h)
        for (int s : gens) {
            int y = g->mul(queue[h], s);
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    return Subgroup(std::move(g), std::move(queue));
}

void Subgroup::check_subgroup() const {
    if (!contains(FiniteGroup::kId)) throw std::logic_error("subgroup misses identity");
    for (int a : elems) {
        if (!contains(parent->inv(a))) throw std::logic_error("subgroup not inverse-closed");
        for (int b : elems)
            if (!contains(parent->mul(a, b))) throw std::logic_error("subgroup not closed");
    }
    if (parent->order() % order() != 0) throw std::logic_error("Lagrange violation");
}

bool GroupHom::is_valid() const {
    const auto& p = *source.parent;
    const auto& t = *target;
    if (image[FiniteGroup::kId] != FiniteGroup::kId) return false;
    for (int a : source.elems) {
        if (image[a] < 0 || image[a] >= t.order()) return false;
        for (int b : source.elems)
            if (image[p.mul(a, b)] != t.mul(image[a], image[b])) return false;
    }
    return true;
}

bool GroupHom::is_injective() const {
    std::set<int> vals;
    for (int a : source.elems)
        if (!vals.insert(image[a]).second) return false;
    return true;
}

Subgroup GroupHom::image_subgroup() const {
    std::vector<int> vals;
    for (int a : source.elems) vals.push_back(image[a]);
    return Subgroup(target, std::move(vals));
}

std::shared_ptr<const Product> Product::make(GroupPtr g, GroupPtr h, int max_order) {
    int ng = g->order(), nh = h->order();
    if (ng * nh > max_order)
        throw std::length_error("direct product exceeds max order");
    int n = ng * nh;
    std::vector<int> mul(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        int a1 = a / nh, a2 = a % nh;
        for (int b = 0; b < n; ++b) {
            int b1 = b / nh, b2 = b % nh;
            mul[a * n + b] = g->mul(a1, b1) * nh + h->mul(a2, b2);
        }
    }
    std::vector<int> gens;
    for (int s : g->generators()) gens.push_back(s * nh);
    for (int s : h->generators()) gens.push_back(s);
    auto prod = std::make_shared<Product>();
    prod->group = FiniteGroup::from_tables(std::move(mul), std::move(gens),
                                           g->name() + "x" + h->name());
    prod->left = std::move(g);
    prod->right = std::move(h);
    return prod;
}

GroupHom projection_hom(const ProductPtr& prod, int which) {
    GroupHom hom;
    hom.source = Subgroup::full(prod->group);
    hom.target = which == 1 ? prod->left : prod->right;
    hom.image.resize(prod->group->order());
    for (int e = 0; e < prod->group->order(); ++e)
        hom.image[e] = which == 1 ? prod->first(e) : prod->second(e);
    return hom;
}

GroupHom embedding_hom(const ProductPtr& prod, int which) {
    GroupHom hom;
    GroupPtr factor = which == 1 ? prod->left : prod->right;
    hom.source = Subgroup::full(factor);
    hom.target = prod->group;
    hom.image.resize(factor->order());
    for (int x = 0; x < factor->order(); ++x)
        hom.image[x] = which == 1 ? prod->encode(x, FiniteGroup::kId)
                                  : prod->encode(FiniteGroup::kId, x);
    return hom;
}

GroupHom identity_hom(const Subgroup& s) {
    GroupHom hom;
    hom.source = s;
    hom.target = s.parent;
    hom.image.assign(s.parent->order(), -1);
    for (int x : s.elems) hom.image[x] = x;
    return hom;
}

Subgroup normalizer(const Subgroup& within, const Subgroup& s) {
    const auto& g = *within.parent;
    std::vector<int> result;
    for (int x : within.elems) {
        bool ok = true;
        for (int a : s.elems)
            if (!s.contains(g.conj(x, a))) {
                ok = false;
                break;
            }
        if (ok) result.push_back(x);
    }
    return Subgroup(within.parent, std::move(result));
}

Subgroup centralizer(const Subgroup& within, const Subgroup& s) {
    const auto& g = *within.parent;
    std::vector<int> result;
    for (int x : within.elems) {
        bool ok = true;
        for (int a : s.elems)
            if (g.mul(x, a) != g.mul(a, x)) {
                ok = false;
                break;
            }
        if (ok) result.push_back(x);
    }
    return Subgroup(within.parent, std::move(result));
}

Subgroup conjugate_subgroup(int g, const Subgroup& s) {
    if (g < 0 || g >= s.parent->order()) throw std::invalid_argument("element not in group");
    std::vector<int> result;
    result.reserve(s.elems.size());
    for (int a : s.elems) result.push_back(s.parent->conj(g, a));
    return Subgroup(s.parent, std::move(result));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    if (a.parent != b.parent) throw std::invalid_argument("intersection across different groups");
    std::vector<int> result;
    for (int x : a.elems)
        if (b.contains(x)) result.push_back(x);
    return Subgroup(a.parent, std::move(result));
}

std::vector<Subgroup> all_subgroups(const Subgroup& within, int sweep_bound) {
    if (sweep_bound > 0 && within.order() > sweep_bound)
        throw std::length_error("subgroup enumeration bound exceeded");
    const auto& g = *within.parent;

    // Bottom-up: extend each known subgroup by one element of `within`.
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    std::vector<int> frontier;
    Subgroup triv = Subgroup::trivial(within.parent);
    seen.insert(triv.elems);
    out.push_back(triv);
    for (size_t head = 0; head < out.size(); ++head) {
        Subgroup cur = out[head];  // copy: out grows
        for (int x : within.elems) {
            if (cur.contains(x)) continue;
            std::vector<int> gens = cur.elems;
            gens.push_back(x);
            Subgroup ext = Subgroup::closure(within.parent, gens);
            if (!within.contains_subgroup(ext)) continue;  // cannot happen; cheap guard
            if (seen.insert(ext.elems).second) out.push_back(ext);
        }
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elems < b.elems;
    });
    (void)g;
    return out;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g, int sweep_bound) {
    return all_subgroups(Subgroup::full(g), sweep_bound);
}

std::vector<Subgroup> subgroup_class_reps(const Subgroup& within,
                                          const std::vector<Subgroup>& subs) {
    std::set<std::vector<int>> covered;
    std::vector<Subgroup> reps;
    for (const auto& s : subs) {
        if (covered.count(s.elems)) continue;
        // Orbit under conjugation; representative = lexicographically minimal.
        std::vector<int> best = s.elems;
        for (int x : within.elems) {
            Subgroup c = conjugate_subgroup(x, s);
            covered.insert(c.elems);
            if (std::make_pair(static_cast<int>(c.elems.size()), c.elems) <
                std::make_pair(static_cast<int>(best.size()), best))
                best = c.elems;
        }
        reps.emplace_back(within.parent, std::move(best));
    }
    return reps;
}

std::vector<std::vector<int>> conjugacy_classes(const Subgroup& s) {
    const auto& g = *s.parent;
    std::vector<char> done(g.order(), 0);
    std::vector<std::vector<int>> classes;
    for (int x : s.elems) {
        if (done[x]) continue;
        std::set<int> cls;
        for (int y : s.elems) cls.insert(g.conj(y, x));
        std::vector<int> v(cls.begin(), cls.end());
        for (int e : v) done[e] = 1;
        classes.push_back(std::move(v));
    }
    return classes;
}

std::vector<int> generating_set(const Subgroup& s) {
    std::vector<int> gens;
    Subgroup cur = Subgroup::trivial(s.parent);
    for (int x : s.elems) {
        if (cur.contains(x)) continue;
        gens.push_back(x);
        std::vector<int> g2 = cur.elems;
        g2.push_back(x);
        cur = Subgroup::closure(s.parent, g2);
        if (cur.order() == s.order()) break;
    }
    return gens;
}

CosetDecomposition left_cosets(const Subgroup& big, const Subgroup& small) {
    const auto& g = *big.parent;
    CosetDecomposition out;
    out.coset_of.assign(g.order(), -1);
    for (int x : big.elems) {
        if (out.coset_of[x] >= 0) continue;
        int idx = static_cast<int>(out.reps.size());
        out.reps.push_back(x);  // big.elems ascending -> rep is minimal in coset
        for (int h : small.elems) out.coset_of[g.mul(x, h)] = idx;
    }
    return out;
}

int exponent(const Subgroup& s) {
    int e = 1;
    for (int x : s.elems) e = std::lcm(e, s.parent->element_order(x));
    return e;
}

bool is_p_group(const Subgroup& s, int p) {
    int n = s.order();
    while (n % p == 0) n /= p;
    return n == 1;
}

Subgroup sylow_subgroup(const GroupPtr& g, int p) {
    int target = 1, n = g->order();
    while (n % p == 0) {
        n /= p;
        target *= p;
    }
    auto subs = all_subgroups(g);
    for (const auto& s : subs)
        if (s.order() == target && is_p_group(s, p)) return s;
    throw std::logic_error("Sylow subgroup not found");
}

std::vector<GroupHom> all_homs(const Subgroup& z, const GroupPtr& target,
                               const std::function<std::vector<int>(int)>& constraint) {
    const auto& zp = *z.parent;
    const auto& t = *target;
    std::vector<int> gens = generating_set(z);

    std::vector<std::vector<int>> choices(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        if (constraint) {
            choices[i] = constraint(gens[i]);
            std::sort(choices[i].begin(), choices[i].end());
        } else {
            choices[i].resize(t.order());
            std::iota(choices[i].begin(), choices[i].end(), 0);
        }
    }

    std::vector<GroupHom> homs;
    std::vector<int> pick(gens.size(), 0);

    auto try_extend = [&]() {
        // Propagate generator images through the closure of Z.
        std::vector<int> image(zp.order(), -1);
        image[FiniteGroup::kId] = FiniteGroup::kId;
        std::vector<int> queue{FiniteGroup::kId};
        for (size_t h = 0; h < queue.size(); ++h) {
            int x = queue[h];
            for (size_t i = 0; i < gens.size(); ++i) {
                int y = zp.mul(x, gens[i]);
                int img = t.mul(image[x], choices[i][pick[i]]);
                if (image[y] < 0) {
                    image[y] = img;
                    queue.push_back(y);
                } else if (image[y] != img) {
                    return;  // inconsistent assignment
                }
            }
        }
        GroupHom hom{z, target, std::move(image)};
        if (!hom.is_valid()) return;
        if (constraint) {
            for (int x : z.elems) {
                auto allowed = constraint(x);
                if (std::find(allowed.begin(), allowed.end(), hom.image[x]) == allowed.end())
                    return;
            }
        }
        homs.push_back(std::move(hom));
    };

    if (gens.empty()) {
        try_extend();
        return homs;
    }
    // Lexicographic sweep over image tuples.
    while (true) {
        bool feasible = true;
        for (size_t i = 0; i < gens.size(); ++i)
            if (choices[i].empty()) feasible = false;
        if (!feasible) return homs;
        try_extend();
        size_t i = gens.size();
        while (i > 0) {
            --i;
            if (++pick[i] < static_cast<int>(choices[i].size())) break;
            pick[i] = 0;
            if (i == 0) return homs;
        }
    }
}

}  // namespace brauerlab
