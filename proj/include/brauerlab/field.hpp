#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace brauerlab {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// F_{p^m} with full lookup tables. Elements are encoded 0..q-1 as the
/// value of their coefficient vector at p, so 0 and 1 are the field's zero
/// and one. For m > 1 the modulus is the first monic irreducible polynomial
/// of degree m in lexicographic coefficient order (deterministic).
class Field {
public:
    using El = uint8_t;

    int p() const { return p_; }
    int m() const { return m_; }
    int q() const { return q_; }

    El add(El a, El b) const { return add_[a * q_ + b]; }
    El sub(El a, El b) const { return add_[a * q_ + neg_[b]]; }
    El mul(El a, El b) const { return mul_[a * q_ + b]; }
    El neg(El a) const { return neg_[a]; }
    El inv(El a) const {
        if (a == 0) throw std::domain_error("division by zero");
        return inv_[a];
    }
    const El* mul_row(El a) const { return &mul_[a * q_]; }

    El from_int(long long v) const {
        long long r = v % p_;
        return static_cast<El>(r < 0 ? r + p_ : r);
    }

    static FieldPtr make(int p, int m = 1);
    /// Smallest m with p^m = 1 mod n (n coprime to p); m = 1 when n = 1.
    static int splitting_degree(int p, int n);

    /// Exhaustive axiom check (associativity, distributivity, inverses).
    void validate() const;

private:
    Field() = default;
    int p_ = 2, m_ = 1, q_ = 2;
    std::vector<El> add_, mul_, neg_, inv_;
};

}  // namespace brauerlab
