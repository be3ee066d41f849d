#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qcover/errors.hpp"

namespace qcover {

/// Element code of GF(q), an integer in [0, q). The code is read base-p as
/// the coefficient vector of the residue polynomial, low degree first, so
/// 0 and 1 are the additive and multiplicative identities of every field.
using Elem = std::uint16_t;

namespace detail {

inline bool prime_power_split(unsigned long q, unsigned& p_out, unsigned& e_out) {
    if (q < 2) return false;
    unsigned long p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (p * p > q) p = q; // q itself is prime
    unsigned long rest = q;
    unsigned e = 0;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) return false;
    p_out = static_cast<unsigned>(p);
    e_out = e;
    return true;
}

// Dense polynomials over GF(p), coefficients low degree first.
using Poly = std::vector<unsigned>;

inline Poly poly_trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

inline Poly poly_mod(Poly f, const Poly& g, unsigned p) {
    f = poly_trim(std::move(f));
    const std::size_t dg = g.size() - 1; // g monic, trimmed
    while (f.size() > dg) {
        unsigned lead = f.back();
        std::size_t shift = f.size() - 1 - dg;
        if (lead != 0) {
            for (std::size_t i = 0; i <= dg; ++i) {
                unsigned& c = f[shift + i];
                c = (c + p - (lead * g[i]) % p) % p;
            }
        }
        f.pop_back();
        f = poly_trim(std::move(f));
        if (f.empty()) break;
    }
    return f;
}

inline Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus, unsigned p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(prod), modulus, p);
}

inline bool poly_is_irreducible(const Poly& f, unsigned p) {
    // Trial division by every monic polynomial of degree 1..deg(f)/2.
    const std::size_t df = f.size() - 1;
    for (std::size_t dg = 1; 2 * dg <= df; ++dg) {
        unsigned long count = 1;
        for (std::size_t i = 0; i < dg; ++i) count *= p;
        for (unsigned long code = 0; code < count; ++code) {
            Poly g(dg + 1, 0);
            g[dg] = 1;
            unsigned long c = code;
            for (std::size_t i = 0; i < dg; ++i) {
                g[i] = static_cast<unsigned>(c % p);
                c /= p;
            }
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

} // namespace detail

inline bool is_prime_power(unsigned long q, unsigned* p = nullptr, unsigned* e = nullptr) {
    unsigned pp = 0, ee = 0;
    if (!detail::prime_power_split(q, pp, ee)) return false;
    if (p) *p = pp;
    if (e) *e = ee;
    return true;
}

/// Exact arithmetic in GF(q) for a prime power q <= 2^16.
///
/// The modulus is the lexicographically smallest monic irreducible of degree
/// e over GF(p), coefficients compared low degree first, so element codes are
/// identical across runs and platforms. Products go through log/antilog
/// tables built once at construction; all values are immutable afterwards and
/// safe to share between threads.
class Field {
public:
    static Field make(unsigned long q) {
        unsigned p = 0, e = 0;
        if (q > (1UL << 16) || !detail::prime_power_split(q, p, e))
            fail(errc::not_prime_power, "field order " + std::to_string(q) +
                                            " is not a prime power <= 2^16");
        return Field(static_cast<unsigned>(q), p, e);
    }

    static std::shared_ptr<const Field> make_shared(unsigned long q) {
        return std::make_shared<const Field>(make(q));
    }

    unsigned q() const { return q_; }
    unsigned p() const { return p_; }
    unsigned e() const { return e_; }

    /// Modulus coefficients, low degree first, length e+1, leading 1.
    /// For prime fields (e == 1) the residue ring is Z/p and the modulus is
    /// the linear polynomial x, encoded {0, 1}.
    const std::vector<unsigned>& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const {
        if (e_ == 1) {
            unsigned s = static_cast<unsigned>(a) + b;
            if (s >= p_) s -= p_;
            return static_cast<Elem>(s);
        }
        if (p_ == 2) return static_cast<Elem>(a ^ b);
        unsigned out = 0, mult = 1;
        for (unsigned i = 0; i < e_; ++i) {
            unsigned da = a % p_, db = b % p_;
            a = static_cast<Elem>(a / p_);
            b = static_cast<Elem>(b / p_);
            unsigned d = da + db;
            if (d >= p_) d -= p_;
            out += d * mult;
            mult *= p_;
        }
        return static_cast<Elem>(out);
    }

    Elem neg(Elem a) const {
        if (p_ == 2) return a;
        if (e_ == 1) return static_cast<Elem>(a == 0 ? 0 : p_ - a);
        unsigned out = 0, mult = 1;
        for (unsigned i = 0; i < e_; ++i) {
            unsigned d = a % p_;
            a = static_cast<Elem>(a / p_);
            out += (d == 0 ? 0 : p_ - d) * mult;
            mult *= p_;
        }
        return static_cast<Elem>(out);
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[static_cast<std::size_t>(log_[a]) + log_[b]];
    }

    Elem inv(Elem a) const {
        if (a == 0) fail(errc::division_by_zero, "inverse of 0 in GF(" + std::to_string(q_) + ")");
        return exp_[q_ - 1 - log_[a]];
    }

    Elem pow(Elem a, unsigned long k) const {
        Elem out = 1;
        while (k) {
            if (k & 1) out = mul(out, a);
            a = mul(a, a);
            k >>= 1;
        }
        return out;
    }

    bool operator==(const Field& o) const { return q_ == o.q_; }

private:
    Field(unsigned q, unsigned p, unsigned e) : q_(q), p_(p), e_(e) {
        if (e_ == 1) {
            modulus_ = {0, 1};
        } else {
            modulus_ = find_modulus();
        }
        build_tables();
    }

    std::vector<unsigned> find_modulus() const {
        // Candidates ordered by (c_0, ..., c_{e-1}) ascending, leading
        // coefficient fixed to 1.
        unsigned long count = 1;
        for (unsigned i = 0; i < e_; ++i) count *= p_;
        for (unsigned long code = 0; code < count; ++code) {
            detail::Poly f(e_ + 1, 0);
            f[e_] = 1;
            unsigned long c = code;
            for (unsigned i = e_; i-- > 0;) {
                f[i] = static_cast<unsigned>(c % p_);
                c /= p_;
            }
            if (detail::poly_is_irreducible(f, p_)) return {f.begin(), f.end()};
        }
        fail(errc::range, "no irreducible polynomial found"); // unreachable
    }

    detail::Poly to_poly(Elem a) const {
        detail::Poly f;
        while (a) {
            f.push_back(a % p_);
            a = static_cast<Elem>(a / p_);
        }
        return f;
    }

    Elem from_poly(const detail::Poly& f) const {
        unsigned out = 0, mult = 1;
        for (unsigned c : f) {
            out += c * mult;
            mult *= p_;
        }
        return static_cast<Elem>(out);
    }

    Elem mul_raw(Elem a, Elem b) const {
        if (e_ == 1) return static_cast<Elem>((static_cast<unsigned long>(a) * b) % p_);
        detail::Poly m(modulus_.begin(), modulus_.end());
        return from_poly(detail::poly_mul_mod(to_poly(a), to_poly(b), m, p_));
    }

    void build_tables() {
        log_.assign(q_, -1);
        exp_.assign(2 * (q_ - 1), 0);
        for (Elem g = 1; g < q_; ++g) {
            Elem x = 1;
            unsigned period = 0;
            do {
                x = mul_raw(x, g);
                ++period;
            } while (x != 1 && period < q_);
            if (period == q_ - 1) {
                Elem y = 1;
                for (unsigned i = 0; i < q_ - 1; ++i) {
                    exp_[i] = y;
                    exp_[i + (q_ - 1)] = y;
                    log_[y] = static_cast<int>(i);
                    y = mul_raw(y, g);
                }
                return;
            }
        }
        fail(errc::range, "no generator found"); // unreachable for prime powers
    }

    unsigned q_, p_, e_;
    std::vector<unsigned> modulus_;
    std::vector<Elem> exp_;
    std::vector<int> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

} // namespace qcover
