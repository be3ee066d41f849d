#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <vector>

#include "qcover/errors.hpp"
#include "qcover/field.hpp"

namespace qcover {

/// Arbitrary-precision integer; every count and bound in this module is
/// exact, no floating point anywhere.
using QInt = mpz_class;

inline QInt qint_pow(unsigned long base, unsigned long exp) {
    QInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
    return out;
}

inline QInt qint_pow(const QInt& base, unsigned long exp) {
    QInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

/// Number of m-dimensional subspaces of an n-dimensional space over GF(q):
/// the product of (q^(n-i) - 1) / (q^(m-i) - 1) over 0 <= i < m, evaluated as
/// an exact integer quotient. Zero when m > n, one when m == 0.
inline QInt gaussian(long n, long m, unsigned long q) {
    if (q < 2) fail(errc::range, "gaussian binomial requires q >= 2");
    if (n < 0 || m < 0) fail(errc::range, "gaussian binomial requires n, m >= 0");
    if (m > n) return 0;
    QInt num = 1, den = 1;
    for (long i = 0; i < m; ++i) {
        num *= qint_pow(q, static_cast<unsigned long>(n - i)) - 1;
        den *= qint_pow(q, static_cast<unsigned long>(m - i)) - 1;
    }
    QInt quot, rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem != 0) fail(errc::range, "gaussian binomial quotient not exact"); // unreachable
    return quot;
}

/// Number of type-(m1,k1) subspaces inside a fixed type-(m,k) subspace of an
/// (n+l)-dimensional space whose distinguished subspace has dimension l.
/// Returns 0 unless 0 <= k1 <= k <= l and 0 <= m1-k1 <= m-k <= n.
inline QInt count_type(long m1, long k1, long m, long k, long n, long l, unsigned long q) {
    if (q < 2) fail(errc::range, "count_type requires q >= 2");
    if (m1 < 0 || k1 < 0 || m < 0 || k < 0 || n < 0 || l < 0)
        fail(errc::range, "count_type requires nonnegative arguments");
    if (!(k1 <= k && k <= l)) return 0;
    if (!(0 <= m1 - k1 && m1 - k1 <= m - k && m - k <= n)) return 0;
    return qint_pow(q, static_cast<unsigned long>((m1 - k1) * (k - k1))) *
           gaussian(m - k, m1 - k1, q) * gaussian(k, k1, q);
}

/// The distinguished-subspace dimension t of the span of a size-maximal
/// intersecting family of type-(m,k) subspaces with covering number m:
/// max{0, 2m-1-n} when k = 0 and m+k-1 when k >= 1.
inline int extremal_t(int m, int k, int n) {
    if (m < 2 || k < 0) fail(errc::range, "extremal_t requires m >= 2, k >= 0");
    if (k == 0) return std::max(0, 2 * m - 1 - n);
    return m + k - 1;
}

/// Prime powers in [lo, hi], ascending.
inline std::vector<unsigned long> prime_powers(unsigned long lo, unsigned long hi) {
    std::vector<unsigned long> out;
    for (unsigned long q = std::max<unsigned long>(lo, 2); q <= hi; ++q)
        if (is_prime_power(q)) out.push_back(q);
    return out;
}

} // namespace qcover
