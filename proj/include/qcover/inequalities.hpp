#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcover/counting.hpp"

namespace qcover {

struct IneqStep {
    std::string label;
    QInt lhs;
    QInt rhs;
    bool strict; // lhs < rhs when true, lhs <= rhs otherwise
    bool holds;
};

inline IneqStep make_step(std::string label, QInt lhs, QInt rhs, bool strict = true) {
    bool holds = strict ? lhs < rhs : lhs <= rhs;
    return {std::move(label), std::move(lhs), std::move(rhs), strict, holds};
}

/// Exact record of one bound check. `holds` is the primary comparison
/// lhs < rhs; chain checks carry their intermediate comparisons in `steps`.
/// Quotients are never evaluated: every rational comparison is
/// cross-multiplied into integers first.
struct IneqReport {
    std::vector<std::pair<std::string, long>> params;
    QInt lhs;
    QInt rhs;
    bool holds;
    std::vector<IneqStep> steps;

    bool all_hold() const {
        if (!holds) return false;
        for (const auto& s : steps)
            if (!s.holds) return false;
        return true;
    }
};

/// G(m-1,1) G(m,1)^(m-1) + G(m-1,1)^2 G(2m-3,m-2): the ceiling on the size of
/// an intersecting family with covering number m whose span exceeds 2m-1
/// dimensions. Requires m >= 3.
inline QInt size_bound_lhs(int m, unsigned long q) {
    if (m < 3) fail(errc::range, "size bound requires m >= 3");
    if (q < 2) fail(errc::range, "size bound requires q >= 2");
    QInt g1 = gaussian(m - 1, 1, q);
    return g1 * qint_pow(gaussian(m, 1, q), static_cast<unsigned long>(m - 1)) +
           g1 * g1 * gaussian(2 * m - 3, m - 2, q);
}

/// G(2m-1, m): the number of m-subspaces of a (2m-1)-dimensional space.
inline QInt size_bound_rhs(int m, unsigned long q) {
    if (m < 3) fail(errc::range, "size bound requires m >= 3");
    return gaussian(2 * m - 1, m, q);
}

/// Exact check that size_bound_lhs < size_bound_rhs, the comparison that
/// settles maximality for m >= 3. Outside q >= m the result is reported
/// without any expectation attached.
inline IneqReport verify_size_bound(int m, unsigned long q) {
    QInt lhs = size_bound_lhs(m, q);
    QInt rhs = size_bound_rhs(m, q);
    bool holds = lhs < rhs;
    return {{{"m", m}, {"q", static_cast<long>(q)}}, std::move(lhs), std::move(rhs), holds, {}};
}

/// The four-step route to the size bound for m >= 4, q >= m, each step an
/// exact integer comparison:
///   (a) q^(m(m-1)) < G(2m-1,m)
///   (b) q^(2(m-1)) G(2m-3,m-2) < G(2m-1,m)
///   (c) q^(m-1) / (q-1)^(m-2) < q(q-2), cross-multiplied
///   (d) lhs < E < G(2m-1,m) for the intermediate expression
///       E = [q^(m-1) q^(m(m-1)) + q^(2(m-1)) (q-1)^(m-2) G(2m-3,m-2)] / (q-1)^m.
inline IneqReport verify_size_bound_chain(int m, unsigned long q) {
    if (m < 4) fail(errc::range, "chain verification requires m >= 4");
    if (q < static_cast<unsigned long>(m)) fail(errc::range, "chain verification requires q >= m");
    const unsigned long um = static_cast<unsigned long>(m);
    QInt lhs = size_bound_lhs(m, q);
    QInt rhs = size_bound_rhs(m, q);
    QInt g_mid = gaussian(2 * m - 3, m - 2, q);
    QInt qm1_pow = qint_pow(QInt(q) - 1, um - 2);       // (q-1)^(m-2)
    QInt den = qm1_pow * (QInt(q) - 1) * (QInt(q) - 1); // (q-1)^m
    QInt e_num = qint_pow(q, um * um - 1) + qint_pow(q, 2 * (um - 1)) * qm1_pow * g_mid;

    IneqReport rep{{{"m", m}, {"q", static_cast<long>(q)}}, lhs, rhs, lhs < rhs, {}};
    rep.steps.push_back(make_step("q^(m(m-1)) < G(2m-1,m)", qint_pow(q, um * (um - 1)), rhs));
    rep.steps.push_back(
        make_step("q^(2(m-1)) G(2m-3,m-2) < G(2m-1,m)", qint_pow(q, 2 * (um - 1)) * g_mid, rhs));
    rep.steps.push_back(make_step("q^(m-1) < q(q-2)(q-1)^(m-2)", qint_pow(q, um - 1),
                                  QInt(q) * (QInt(q) - 2) * qm1_pow));
    rep.steps.push_back(make_step("bound numerator: lhs (q-1)^m < E-numerator", lhs * den, e_num));
    rep.steps.push_back(
        make_step("bound numerator: E-numerator < G(2m-1,m) (q-1)^m", e_num, rhs * den));
    return rep;
}

/// q^(b(a-b)) < G(a,b) <= G(a-b+1,1)^b for a > b >= 1.
inline IneqReport verify_power_bounds(long a, long b, unsigned long q) {
    if (!(a > b && b >= 1)) fail(errc::range, "power bounds require a > b >= 1");
    if (q < 2) fail(errc::range, "power bounds require q >= 2");
    QInt g = gaussian(a, b, q);
    QInt low = qint_pow(q, static_cast<unsigned long>(b * (a - b)));
    QInt high = qint_pow(gaussian(a - b + 1, 1, q), static_cast<unsigned long>(b));
    IneqReport rep{{{"a", a}, {"b", b}, {"q", static_cast<long>(q)}}, low, g, low < g, {}};
    rep.steps.push_back(make_step("q^(b(a-b)) < G(a,b)", low, g));
    rep.steps.push_back(make_step("G(a,b) <= G(a-b+1,1)^b", g, high, /*strict=*/false));
    return rep;
}

/// Exact check that size_bound_lhs < N(m,k; 2m-1,t; n+l,n) with t from
/// extremal_t, plus the auxiliary steps behind it: the power bounds on the
/// factors of N, the intermediate expression
///   E = (q^(m-1) + q^(m-2)) q^(m(m-1)) / (q-1)^m,
/// and (q-1)^m > q^(m-1) + q^(m-2). Requires q >= m+2 >= 5; infeasible
/// (m,k,n,l) combinations are rejected with the violated clause named.
inline IneqReport verify_singular_bound(int m, int k, int n, int l, unsigned long q) {
    if (m < 3 || q < static_cast<unsigned long>(m) + 2)
        fail(errc::range, "singular bound verification requires q >= m+2 >= 5");
    if (k < 0 || n < 1 || l < 0) fail(errc::range, "singular bound requires k >= 0, n >= 1, l >= 0");
    const int t = extremal_t(m, k, n);
    auto reject = [&](const std::string& clause) {
        fail(errc::infeasible, "infeasible parameters for the singular bound: " + clause);
    };
    if (k > t) reject("k <= t fails");
    if (t > l) reject("t <= l fails (t = " + std::to_string(t) + ")");
    if (m - k < 0) reject("k <= m fails");
    if (m - k > 2 * m - 1 - t) reject("m-k <= 2m-1-t fails");
    if (2 * m - 1 - t > n) reject("2m-1-t <= n fails (2m-1-t = " + std::to_string(2 * m - 1 - t) + ")");

    const unsigned long um = static_cast<unsigned long>(m);
    QInt lhs = size_bound_lhs(m, q);
    QInt rhs = count_type(m, k, 2 * m - 1, t, n, l, q);
    IneqReport rep{{{"m", m}, {"k", k}, {"n", n}, {"l", l}, {"q", static_cast<long>(q)}, {"t", t}},
                   lhs,
                   rhs,
                   lhs < rhs,
                   {}};

    rep.steps.push_back(make_step("G(2m-3,m-2) <= G(m,1)^(m-2)", gaussian(2 * m - 3, m - 2, q),
                                  qint_pow(gaussian(m, 1, q), um - 2), /*strict=*/false));
    QInt den = qint_pow(QInt(q) - 1, um);                      // (q-1)^m
    QInt small_powers = qint_pow(q, um - 1) + qint_pow(q, um - 2); // q^(m-1)+q^(m-2)
    QInt qmm = qint_pow(q, um * (um - 1));                     // q^(m(m-1))
    rep.steps.push_back(make_step("lhs (q-1)^m < (q^(m-1)+q^(m-2)) q^(m(m-1))", lhs * den,
                                  small_powers * qmm));
    rep.steps.push_back(make_step("q^(m-1)+q^(m-2) < (q-1)^m", small_powers, den));
    rep.steps.push_back(
        make_step("(q^(m-1)+q^(m-2)) q^(m(m-1)) < (q-1)^m q^(m(m-1))", small_powers * qmm, den * qmm));
    rep.steps.push_back(make_step("q^(m(m-1)) <= N", qmm, rhs, /*strict=*/false));
    if (2 * m - 1 - t > m - k && m - k >= 1)
        rep.steps.push_back(make_step(
            "q^((m-k)(m-1+k-t)) < G(2m-1-t,m-k)",
            qint_pow(q, static_cast<unsigned long>((m - k) * (2 * m - 1 - t - (m - k)))),
            gaussian(2 * m - 1 - t, m - k, q)));
    if (t > k && k >= 1)
        rep.steps.push_back(make_step("q^(k(t-k)) < G(t,k)",
                                      qint_pow(q, static_cast<unsigned long>(k * (t - k))),
                                      gaussian(t, k, q)));
    return rep;
}

} // namespace qcover
