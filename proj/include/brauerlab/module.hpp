#pragma once

#include <map>

#include "brauerlab/gset.hpp"
#include "brauerlab/matrix.hpp"

namespace brauerlab {

/// A module over the group algebra F_q[acting], given by one invertible
/// matrix per generator of the acting subgroup. Matrices of arbitrary
/// elements are built on demand through a breadth-first factorization and
/// cached; the cache makes a module value single-thread (verification
/// instances own their modules).
class FModule {
public:
    GroupPtr group;   // ambient
    Subgroup acting;
    FieldPtr field;
    int dim = 0;
    std::vector<std::string> basis_labels;
    std::shared_ptr<const GSet> perm;  // set when this is a permutation module

    const Mat& act(int g) const;
    const std::vector<int>& gen_ids() const { return gen_ids_; }

    static FModule from_generators(GroupPtr group, Subgroup acting, FieldPtr field,
                                   int dim, std::vector<int> gen_ids,
                                   std::vector<Mat> gen_mats);
    static FModule zero(GroupPtr group, Subgroup acting, FieldPtr field);

    /// Generator invertibility and multiplicativity over all acting pairs.
    void validate() const;

private:
    std::vector<int> gen_ids_;
    std::vector<Mat> gen_mats_;
    std::vector<int> word_parent_, word_gen_;
    mutable std::vector<Mat> cache_;
};

FModule linearize(const GSet& u, const FieldPtr& field);

/// Change the acting subgroup along a group isomorphism given elementwise:
/// to_elem[x] is the image in the new ambient of the acting element x.
FModule transport_module(const FModule& m, const GroupPtr& new_group,
                         const Subgroup& new_acting, const std::vector<int>& to_elem);

FModule restrict_module(const FModule& m, const Subgroup& s);
FModule direct_sum(const std::vector<FModule>& parts);
FModule induce_module(const Subgroup& big, const FModule& m);
FModule dual(const FModule& m);

struct FixedSubmodule {
    Mat basis;    // dim x f, columns span M^P
    FModule mod;  // over N_{acting}(P) in the basis coordinates
};
FixedSubmodule fixed_submodule(const FModule& m, const Subgroup& p);

/// tr_Q^P(x) = sum over coset representatives of P/Q of r*x; the result is
/// independent of the transversal (asserted against a shifted one).
std::vector<Field::El> relative_trace(const FModule& m, const Subgroup& q,
                                      const Subgroup& p, const std::vector<Field::El>& x);

/// Brauer construction M(P) = M^P / sum of proper relative-trace images.
/// For permutation modules the composite F[U^P] -> M^P -> M(P) is asserted
/// to be an isomorphism and the result is presented on the U^P basis.
struct BrauerData {
    FModule mod;      // over N_{acting}(P)
    Mat fixed_basis;  // dim x f
    Mat br;           // mod.dim x f: Br_P on fixed coordinates
    Mat section;      // dim x mod.dim: representatives in M of the basis
    Subgroup p;
};

/// Per-module scratch for repeated Brauer constructions: fixed-space bases
/// and subgroup lattices keyed by the subgroup's element list. A workspace
/// belongs to one module value and one thread.
struct BrauerWorkspace {
    std::map<std::vector<int>, FixedSubmodule> fixed;
    std::map<std::vector<int>, std::vector<Subgroup>> maximal;  // index-p subgroups
    std::map<std::vector<int>, BrauerData> brauer;
};

BrauerData brauer_construction(const FModule& m, const Subgroup& p, int prime,
                               BrauerWorkspace* ws = nullptr);
/// Cached variant; computes on first use.
const BrauerData& cached_brauer(const FModule& m, const Subgroup& p, int prime,
                                BrauerWorkspace& ws);

/// Coordinates of v in the column space of basis; throws if outside.
std::vector<Field::El> coords_in(const Field& f, const Mat& basis,
                                 const std::vector<Field::El>& v);

struct ExtTensorMod {
    FModule mod;  // over X*Y
    ProductSubgroup xy;
    LinkData link;
    int dm = 0, dn = 0;
    // Class map: pair coordinates (kron of inputs) -> mod coordinates, and a
    // section picking a pair-coordinate representative per basis vector.
    Mat class_map;      // mod.dim x dm*dn
    Mat class_section;  // dm*dn x mod.dim, class_map * class_section = id
    std::vector<Field::El> tensor_class(const std::vector<Field::El>& m,
                                        const std::vector<Field::El>& n) const;
};

/// Extended tensor product of modules: M (x)_{F[k(X,Y)]} N with the X*Y
/// action through linking elements. Permutation inputs are presented on the
/// basis of the set-level extended tensor; the generic quotient route is
/// cross-checked against it up to `crosscheck_cap` total tensor dimension.
ExtTensorMod ext_tensor_mod(const ProductSubgroup& x, const ProductSubgroup& y,
                            const FModule& m, const FModule& n, const ProductPtr& gk,
                            int crosscheck_cap = 400);

/// Same, reusing a set-level extended tensor already built for the
/// underlying G-sets of two permutation modules.
ExtTensorMod ext_tensor_mod_from_set(const ExtTensor& ext, const FModule& m,
                                     const FModule& n);

/// Plain bimodule tensor over the full middle group (independent route).
ExtTensorMod bimodule_tensor(const ProductSubgroup& x, const ProductSubgroup& y,
                             const FModule& m, const FModule& n, const ProductPtr& gk);

/// Module structure on an invariant column-space basis.
FModule submodule(const FModule& m, const Mat& basis);

struct HomSpace {
    std::vector<Mat> basis;  // target.dim x source.dim matrices
};
HomSpace hom_space(const FModule& m, const FModule& n);

enum class Verdict { kYes, kNo, kInconclusive };

struct IsoResult {
    Verdict verdict = Verdict::kInconclusive;
    Mat witness;  // invertible intertwiner when verdict == kYes
};
/// Sound isomorphism test: never returns kYes without a verified witness
/// and never kNo unless the search space was exhausted.
IsoResult is_isomorphic(const FModule& m, const FModule& n, uint64_t seed = 0);

struct DecompResult {
    std::vector<FModule> summands;
    std::vector<Mat> embeddings;  // m.dim x summand.dim column bases
    bool certified = false;       // indecomposability of each summand certified
};
DecompResult decompose_indecomposable(const FModule& m, uint64_t seed = 0);

/// Vertex of a certified indecomposable trivial-source module: the maximal
/// p-subgroup class with nonvanishing Brauer construction. Asserts the
/// nonvanishing classes are exactly the subconjugates of the vertex.
Subgroup vertex(const FModule& m, int prime);

struct VirtualModule {
    std::vector<FModule> positives;
    std::vector<FModule> negatives;
};

/// Krull-Schmidt matching of the two sides after full decomposition.
Verdict is_virtually_equal(const VirtualModule& a, const VirtualModule& b,
                           uint64_t seed = 0);

}  // namespace brauerlab
