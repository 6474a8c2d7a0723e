#pragma once

#include "brauerlab/blocks.hpp"
#include "brauerlab/catalog.hpp"
#include "brauerlab/theorem2.hpp"

namespace brauerlab {

// Brute-force oracles, kept independent of the implementations they check.

struct MarksTable {
    std::vector<int> counts;  // fixed-point counts per subgroup of the acting group
};

MarksTable marks(const GSet& u, const std::vector<Subgroup>& subgroups);
/// Burnside: equality of marks on all subgroups decides isomorphism.
bool gsets_isomorphic(const GSet& u, const GSet& v);
bool gsets_isomorphic(const GSet& u, const GSet& v, const std::vector<Subgroup>& subgroups);

/// Independent orbit structure of U x V under the middle-kernel action,
/// recomputed from the definition (shared across the Z's of one sweep pair).
struct OracleTensor {
    std::vector<int> orbit_of;
    std::vector<std::pair<int, int>> reps;
    std::vector<int> xy_members;  // scanned from the linking definition
};
OracleTensor oracle_tensor(const ProductSubgroup& x, const ProductSubgroup& y,
                           const GSet& u, const GSet& v, const ProductPtr& gk);
GSet oracle_fixed_from_tensor(const OracleTensor& t, const ProductSubgroup& x,
                              const ProductSubgroup& y, const Subgroup& z, const GSet& u,
                              const GSet& v, const ProductPtr& gk);

/// Z-fixed points of the extended tensor product computed from the
/// definition alone (fresh orbit computation, pointwise fixedness); the
/// acting normalizer is also recomputed from scratch.
GSet oracle_fixed_ext_tensor(const ProductSubgroup& x, const ProductSubgroup& y,
                             const Subgroup& z, const GSet& u, const GSet& v,
                             const ProductPtr& gk);

/// All idempotents of Z(F[S]) by exhaustive scan (q^{dim Z} <= 2^20), and
/// the primitive ones among them.
std::vector<AlgebraElement> oracle_center_idempotents(const Field& f, const Subgroup& s);
std::vector<AlgebraElement> oracle_primitive_idempotents(const Field& f, const Subgroup& s);

struct SweepConfig {
    std::vector<std::string> groups{"C1", "C2", "C3", "C4", "V4", "S3"};
    std::vector<int> primes{2, 3};
    bool run_theorem1 = true;
    bool run_theorem2 = true;
    int max_product_order = 64;
    uint64_t seed = 0;
    int jobs = 0;  // 0: all hardware threads; 1: serial reference
};

struct Theorem2Counts {
    int prime = 0;
    long instances = 0;
    long hypothesis_met = 0;
    long verified = 0;
};

struct SweepReport {
    SweepConfig config;
    long pairs = 0;  // (X, Y) pairs up to simultaneous conjugacy
    long t1_instances = 0;
    long t1_hypothesis_met = 0;
    long t1_verified = 0;
    long t1_oracle_checked = 0;
    long stab_points_checked = 0;
    long stab_failures = 0;
    long biset_instances = 0;
    long biset_failures = 0;
    std::vector<Theorem2Counts> t2;
    std::vector<std::string> defects;
    double t1_seconds = 0;  // wall clock, not serialized
    double t2_seconds = 0;

    std::string to_json() const;  // deterministic, excludes timings
};

/// The full verification sweep: every subgroup pair up to simultaneous
/// conjugacy, every Z up to conjugacy in X*Y, every transitive U and V.
/// Deterministic for a fixed config regardless of the job count.
SweepReport run_sweep(const SweepConfig& config, const Catalog& catalog);

}  // namespace brauerlab
