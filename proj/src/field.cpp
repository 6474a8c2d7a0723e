#include "brauerlab/field.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace brauerlab {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Polynomials over F_p as coefficient vectors (low degree first).
using Poly = std::vector<int>;

Poly poly_mod(Poly a, const Poly& mod, int p) {
    int dm = static_cast<int>(mod.size()) - 1;
    while (static_cast<int>(a.size()) > dm) {
        int lead = a.back();
        int shift = static_cast<int>(a.size()) - 1 - dm;
        if (lead != 0)
            for (int i = 0; i <= dm; ++i) {
                int& c = a[shift + i];
                c = ((c - lead * mod[i]) % p + p * p) % p;
            }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
}

bool divides(const Poly& d, Poly a, int p) {
    // monic d
    int dd = static_cast<int>(d.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dd && !a.empty()) {
        int lead = a.back();
        int shift = static_cast<int>(a.size()) - 1 - dd;
        if (lead != 0)
            for (int i = 0; i <= dd; ++i) {
                int& c = a[shift + i];
                c = ((c - lead * d[i]) % p + p * p) % p;
            }
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a.empty();
}

bool is_irreducible(const Poly& f, int p) {
    int deg = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
        // scan monic polynomials of degree d
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            g[d] = 1;
            int c = code;
            for (int i = 0; i < d; ++i) {
                g[i] = c % p;
                c /= p;
            }
            if (divides(g, f, p)) return false;
        }
    }
    return true;
}

}  // namespace

FieldPtr Field::make(int p, int m) {
    static std::mutex cache_mutex;
    static std::map<std::pair<int, int>, FieldPtr> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({p, m});
        if (it != cache.end()) return it->second;
    }
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (m < 1) throw std::invalid_argument("extension degree must be positive");
    long long qll = 1;
    for (int i = 0; i < m; ++i) qll *= p;
    if (qll > 256) throw std::length_error("field size beyond table limit");
    int q = static_cast<int>(qll);

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->m_ = m;
    f->q_ = q;

    Poly mod;
    if (m > 1) {
        int count = 1;
        for (int i = 0; i < m; ++i) count *= p;
        for (int code = 0; code < count; ++code) {
            Poly g(m + 1, 0);
            g[m] = 1;
            int c = code;
            for (int i = 0; i < m; ++i) {
                g[i] = c % p;
                c /= p;
            }
            if (is_irreducible(g, p)) {
                mod = g;
                break;
            }
        }
        if (mod.empty()) throw std::logic_error("no irreducible polynomial found");
    }

    auto decode = [&](int v) {
        Poly c;
        while (v) {
            c.push_back(v % p);
            v /= p;
        }
        return c;
    };
    auto encode = [&](const Poly& c) {
        int v = 0;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p + c[i];
        return v;
    };

    f->add_.resize(q * q);
    f->mul_.resize(q * q);
    f->neg_.resize(q);
    f->inv_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        Poly pa = decode(a);
        for (int b = 0; b < q; ++b) {
            Poly pb = decode(b);
            Poly s(std::max(pa.size(), pb.size()), 0);
            for (size_t i = 0; i < s.size(); ++i) {
                int v = (i < pa.size() ? pa[i] : 0) + (i < pb.size() ? pb[i] : 0);
                s[i] = v % p;
            }
            f->add_[a * q + b] = static_cast<El>(encode(s));
            Poly prod = poly_mul(pa, pb, p);
            if (m > 1) prod = poly_mod(std::move(prod), mod, p);
            f->mul_[a * q + b] = static_cast<El>(encode(prod));
        }
    }
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            if (f->add_[a * q + b] == 0) f->neg_[a] = static_cast<El>(b);
            if (a && f->mul_[a * q + b] == 1) f->inv_[a] = static_cast<El>(b);
        }
        if (a && f->inv_[a] == 0) throw std::logic_error("element without inverse");
    }
    f->validate();
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache[{p, m}] = f;
    }
    return f;
}

int Field::splitting_degree(int p, int n) {
    if (n <= 1) return 1;
    if (n % p == 0) throw std::invalid_argument("n must be coprime to p");
    int m = 1;
    long long pw = p % n;
    while (pw != 1) {
        pw = pw * p % n;
        ++m;
        if (m > 64) throw std::logic_error("splitting degree runaway");
    }
    return m;
}

void Field::validate() const {
    for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) {
            if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a))
                throw std::logic_error("field tables not commutative");
            for (int c = 0; c < q_; ++c) {
                if (add(add(a, b), c) != add(a, add(b, c)))
                    throw std::logic_error("addition not associative");
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw std::logic_error("multiplication not associative");
                if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
                    throw std::logic_error("distributivity fails");
            }
        }
    for (int a = 0; a < q_; ++a) {
        if (add(a, neg(a)) != 0) throw std::logic_error("negation broken");
        if (a && mul(a, inv(a)) != 1) throw std::logic_error("inverse broken");
        if (mul(a, 1) != a || add(a, 0) != a) throw std::logic_error("units broken");
    }
}

}  // namespace brauerlab
