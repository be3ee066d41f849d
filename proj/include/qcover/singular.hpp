#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcover/family.hpp"

namespace qcover {

/// An (n+l)-dimensional space over GF(q) with a distinguished l-dimensional
/// subspace W1, fixed by convention to the span of the last l standard basis
/// vectors so that subspace types are coordinate-computable.
class SingularSpace {
public:
    SingularSpace(FieldPtr f, int n, int l) : field_(std::move(f)), n_(n), l_(l) {
        if (n < 1 || l < 0) fail(errc::range, "singular space requires n >= 1, l >= 0");
    }

    const FieldPtr& field() const { return field_; }
    const Field& f() const { return *field_; }
    int n() const { return n_; }
    int l() const { return l_; }
    int ambient() const { return n_ + l_; }

    Subspace w1() const {
        Matrix m(l_, ambient());
        for (int i = 0; i < l_; ++i) m.at(i, n_ + i) = 1;
        return Subspace::from_canonical(field_, std::move(m));
    }

private:
    FieldPtr field_;
    int n_;
    int l_;
};

/// An m-subspace P has type (m, k) when dim(P cap W1) = k.
struct SubspaceType {
    int m;
    int k;
    bool operator==(const SubspaceType&) const = default;
};

inline SubspaceType type_of(const SingularSpace& sing, const Subspace& p) {
    if (p.f().q() != sing.f().q() || p.ambient() != sing.ambient())
        fail(errc::mismatch, "subspace lives outside the singular space");
    return {p.dim(), meet_dim(p, sing.w1())};
}

/// Every m-subspace of X of type (m, k), in the canonical enumeration order
/// of the m-subspaces of X. The cardinality is cross-checked against
/// count_type for the type of X on every call (both directions of the
/// existence criterion: a zero formula value must mean an empty list).
inline std::vector<Subspace> subspaces_of_type(const SingularSpace& sing, const Subspace& x,
                                               int m, int k) {
    SubspaceType xt = type_of(sing, x);
    std::vector<Subspace> out;
    if (m <= x.dim() && m >= 0) {
        const Subspace w1 = sing.w1();
        SubspaceGen gen(x, m);
        while (auto p = gen.next())
            if (meet_dim(*p, w1) == k) out.push_back(std::move(*p));
    }
    QInt expected = count_type(m, k, xt.m, xt.k, sing.n(), sing.l(), sing.f().q());
    if (expected != static_cast<unsigned long>(out.size()))
        throw std::logic_error("type enumeration disagrees with the counting formula");
    return out;
}

/// All m-subspaces through a fixed 1-subspace: the intersecting family with
/// covering number 1 and the most members.
inline Family trivial_family(FieldPtr f, int n_amb, int m, const Subspace& point) {
    if (point.dim() != 1) fail(errc::range, "trivial family requires a 1-dimensional point");
    if (point.f().q() != f->q() || point.ambient() != n_amb)
        fail(errc::mismatch, "point lives in a different space");
    if (m < 1 || m > n_amb) fail(errc::range, "member dimension out of range");
    std::vector<Subspace> members;
    SubspaceGen gen(Subspace::full(f, n_amb), m);
    while (auto s = gen.next())
        if (contains(*s, point)) members.push_back(std::move(*s));
    Family fam = Family::of(std::move(f), n_amb, m, std::move(members));
    if (gaussian(n_amb - 1, m - 1, fam.f().q()) != static_cast<unsigned long>(fam.size()))
        throw std::logic_error("trivial family size disagrees with the counting formula");
    return fam;
}

/// The family of all m-subspaces of a fixed (2m-1)-dimensional X, here the
/// span of the first 2m-1 standard basis vectors: the size-maximal
/// intersecting family with covering number m.
inline Family extremal_family(FieldPtr f, int n_amb, int m) {
    if (m < 2) fail(errc::range, "extremal family requires m >= 2");
    if (n_amb < 2 * m - 1) fail(errc::range, "extremal family requires ambient >= 2m-1");
    Matrix xb(2 * m - 1, n_amb);
    for (int i = 0; i < 2 * m - 1; ++i) xb.at(i, i) = 1;
    Subspace x = Subspace::from_canonical(f, std::move(xb));
    Family fam = Family::of(f, n_amb, m, all_subspaces(x, m));
    if (gaussian(2 * m - 1, m, f->q()) != static_cast<unsigned long>(fam.size()))
        throw std::logic_error("extremal family size disagrees with the counting formula");
    return fam;
}

/// The span X used by the singular extremal construction: a type-(2m-1, t)
/// subspace assembled from the first 2m-1-t standard vectors outside W1 and
/// the first t inside it. Throws errc::infeasible naming the violated
/// existence clause when no such X or no type-(m,k) subspace of it exists.
inline Subspace extremal_singular_span(const SingularSpace& sing, int m, int k) {
    if (m < 2 || k < 0) fail(errc::range, "extremal construction requires m >= 2, k >= 0");
    const int t = extremal_t(m, k, sing.n());
    auto reject = [&](const std::string& clause) {
        fail(errc::infeasible, "no extremal family for these parameters: " + clause);
    };
    if (k > m) reject("k <= m fails (k = " + std::to_string(k) + ", m = " + std::to_string(m) + ")");
    if (k > t) reject("k <= t fails (k = " + std::to_string(k) + ", t = " + std::to_string(t) + ")");
    if (t > sing.l())
        reject("t <= l fails (t = " + std::to_string(t) + ", l = " + std::to_string(sing.l()) + ")");
    if (m - k > 2 * m - 1 - t)
        reject("m-k <= 2m-1-t fails (m-k = " + std::to_string(m - k) + ")");
    if (2 * m - 1 - t > sing.n())
        reject("2m-1-t <= n fails (2m-1-t = " + std::to_string(2 * m - 1 - t) +
               ", n = " + std::to_string(sing.n()) + ")");
    Matrix xb(2 * m - 1, sing.ambient());
    for (int i = 0; i < 2 * m - 1 - t; ++i) xb.at(i, i) = 1;
    for (int i = 0; i < t; ++i) xb.at(2 * m - 1 - t + i, sing.n() + i) = 1;
    return Subspace::from_rows(sing.field(), std::move(xb));
}

/// All type-(m,k) subspaces of the canonical type-(2m-1, t) span, with t
/// chosen by extremal_t: the size-maximal intersecting family of type-(m,k)
/// subspaces with covering number m.
inline Family extremal_singular_family(const SingularSpace& sing, int m, int k) {
    Subspace x = extremal_singular_span(sing, m, k);
    std::vector<Subspace> members = subspaces_of_type(sing, x, m, k);
    if (members.empty())
        fail(errc::infeasible, "no extremal family for these parameters: empty type layer");
    return Family::of(sing.field(), sing.ambient(), m, std::move(members));
}

struct ExtremalReport {
    bool intersecting = false;
    int tau = 0;
    bool tau_ok = false;
    QInt expected_size;
    std::size_t actual_size = 0;
    bool size_ok = false;
    int span_dim = 0;
    bool span_ok = false;
    bool members_typed_ok = true; // singular model only: all members share the type
    bool ok() const { return intersecting && tau_ok && size_ok && span_ok && members_typed_ok; }
};

/// Checks the four marks of an extremal family: pairwise intersecting,
/// covering number exactly m, cardinality matching the counting formula, and
/// a span of dimension 2m-1 (of the predicted type in the singular model).
inline ExtremalReport check_extremal(const Family& fam,
                                     const std::optional<SingularSpace>& sing = {}) {
    if (fam.size() == 0) fail(errc::empty_family, "cannot check an empty family");
    ExtremalReport rep;
    const int m = fam.m();
    rep.intersecting = is_intersecting(fam).intersecting;
    CoverResult cover = covering_number(fam);
    rep.tau = cover.tau;
    rep.tau_ok = cover.exact && cover.tau == m;
    const Subspace x = family_span(fam);
    rep.span_dim = x.dim();
    rep.actual_size = fam.size();
    if (sing) {
        SubspaceType ft = type_of(*sing, fam.members().front());
        for (const auto& mbr : fam.members())
            if (type_of(*sing, mbr) != ft) {
                rep.members_typed_ok = false;
                break;
            }
        const int t = extremal_t(m, ft.k, sing->n());
        rep.expected_size = count_type(m, ft.k, 2 * m - 1, t, sing->n(), sing->l(), fam.f().q());
        rep.span_ok = x.dim() == 2 * m - 1 && type_of(*sing, x) == SubspaceType{2 * m - 1, t};
    } else {
        rep.expected_size = gaussian(2 * m - 1, m, fam.f().q());
        rep.span_ok = x.dim() == 2 * m - 1;
    }
    rep.size_ok = rep.expected_size == static_cast<unsigned long>(rep.actual_size);
    return rep;
}

/// True iff the family equals the set of ALL m-subspaces (or all type-(m,k)
/// subspaces, in the singular model) of its own span.
inline bool is_span_complete(const Family& fam, const std::optional<SingularSpace>& sing = {}) {
    if (fam.size() == 0) fail(errc::empty_family, "cannot check an empty family");
    const Subspace x = family_span(fam);
    std::vector<Subspace> candidates;
    if (sing) {
        const int k = type_of(*sing, fam.members().front()).k;
        candidates = subspaces_of_type(*sing, x, fam.m(), k);
    } else {
        QInt layer = gaussian(x.dim(), fam.m(), fam.f().q());
        if (layer != static_cast<unsigned long>(fam.size())) return false;
        candidates = all_subspaces(x, fam.m());
    }
    if (candidates.size() != fam.size()) return false;
    std::sort(candidates.begin(), candidates.end());
    return candidates == fam.members();
}

} // namespace qcover
