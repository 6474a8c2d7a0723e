#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace brauerlab {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group given by an explicit multiplication table. Element ids are
/// 0..order-1 with 0 the identity; ids are assigned breadth-first from the
/// identity over the generators in input order, so tables are reproducible.
class FiniteGroup {
public:
    static constexpr int kId = 0;

    int order() const { return n_; }
    int mul(int a, int b) const { return mul_[a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    /// ^g x = g x g^-1
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
    int element_order(int x) const;

    const std::vector<int>& generators() const { return gens_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& labels() const { return labels_; }

    static GroupPtr from_permutations(int degree,
                                      const std::vector<std::vector<int>>& generators,
                                      std::string name = "",
                                      int max_order = 10000);
    static GroupPtr from_tables(std::vector<int> mul, std::vector<int> gens,
                                std::string name,
                                std::vector<std::string> labels = {});
    static GroupPtr trivial();

    /// Full identity/inverse/closure checks; associativity by triple loop
    /// for order <= 64. Throws on violation.
    void validate() const;

private:
    FiniteGroup() = default;
    int n_ = 1;
    std::vector<int> mul_, inv_, gens_;
    std::string name_;
    std::vector<std::string> labels_;
};

/// A subgroup stored as a sorted element-id set of its parent group.
struct Subgroup {
    GroupPtr parent;
    std::vector<int> elems;  // sorted ascending

    Subgroup() = default;
    Subgroup(GroupPtr p, std::vector<int> members);

    int order() const { return static_cast<int>(elems.size()); }
    bool contains(int x) const { return mask_[static_cast<size_t>(x) >> 6] >> (x & 63) & 1; }
    /// Position of x within elems, -1 if absent.
    int pos(int x) const { return contains(x) ? pos_[x] : -1; }
    bool contains_subgroup(const Subgroup& other) const;
    bool same_parent(const Subgroup& other) const { return parent == other.parent; }
    bool operator==(const Subgroup& other) const;

    static Subgroup full(GroupPtr g);
    static Subgroup trivial(GroupPtr g);
    static Subgroup closure(GroupPtr g, const std::vector<int>& gens);

    void check_subgroup() const;  // id/closure/inverse/Lagrange, throws

private:
    std::vector<uint64_t> mask_;
    std::vector<int> pos_;
};

/// A homomorphism from a subgroup of one group into another group,
/// stored as per-element images (indexed by parent element id, -1 outside
/// the domain).
struct GroupHom {
    Subgroup source;
    GroupPtr target;
    std::vector<int> image;  // size source.parent->order()

    int operator()(int x) const { return image[x]; }
    bool is_valid() const;       // multiplicativity over the whole domain
    bool is_injective() const;
    Subgroup image_subgroup() const;
};

/// Ambient direct product G x H with pair encoding g*|H|+h.
struct Product {
    GroupPtr group;  // the product as a FiniteGroup
    GroupPtr left, right;

    int encode(int g, int h) const { return g * right->order() + h; }
    int first(int e) const { return e / right->order(); }
    int second(int e) const { return e % right->order(); }

    static std::shared_ptr<const Product> make(GroupPtr g, GroupPtr h, int max_order = 10000);
};
using ProductPtr = std::shared_ptr<const Product>;

GroupHom projection_hom(const ProductPtr& prod, int which);  // which: 1 or 2
GroupHom embedding_hom(const ProductPtr& prod, int which);
/// Identity isomorphism S -> S.
GroupHom identity_hom(const Subgroup& s);

Subgroup normalizer(const Subgroup& within, const Subgroup& s);
Subgroup centralizer(const Subgroup& within, const Subgroup& s);
Subgroup conjugate_subgroup(int g, const Subgroup& s);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

/// Every subgroup contained in `within`, each exactly once, sorted by
/// (order, lexicographic element list). Bottom-up closure search.
std::vector<Subgroup> all_subgroups(const Subgroup& within, int sweep_bound = 0);
std::vector<Subgroup> all_subgroups(const GroupPtr& g, int sweep_bound = 0);

/// Representatives of conjugacy classes of `subs` under conjugation by
/// `within` (minimal element list per class), in input order of first hits.
std::vector<Subgroup> subgroup_class_reps(const Subgroup& within,
                                          const std::vector<Subgroup>& subs);

/// Conjugacy classes of s (as a group in its own right), each sorted,
/// ordered by minimal member.
std::vector<std::vector<int>> conjugacy_classes(const Subgroup& s);

/// Greedy deterministic generating set (ascending element scan).
std::vector<int> generating_set(const Subgroup& s);

struct CosetDecomposition {
    std::vector<int> reps;      // minimal-id representative per coset
    std::vector<int> coset_of;  // parent-element id -> coset index (-1 outside big)
};
/// Left cosets g*small for g in big.
CosetDecomposition left_cosets(const Subgroup& big, const Subgroup& small);

int exponent(const Subgroup& s);
bool is_p_group(const Subgroup& s, int p);
Subgroup sylow_subgroup(const GroupPtr& g, int p);

/// All homomorphisms from Z into target whose image at each z lies in
/// constraint(z) (when given). Enumerates images of a minimal generating
/// set in lexicographic order, then validates every element; deterministic.
std::vector<GroupHom> all_homs(
    const Subgroup& z, const GroupPtr& target,
    const std::function<std::vector<int>(int)>& constraint = nullptr);

}  // namespace brauerlab
