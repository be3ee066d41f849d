#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qcover/counting.hpp"
#include "qcover/subspace.hpp"

namespace qcover {

/// A duplicate-free set of equal-dimension subspaces of one ambient space,
/// stored sorted in the canonical subspace order so that family equality is
/// plain data equality.
class Family {
public:
    static Family of(FieldPtr f, int ambient, int m, std::vector<Subspace> members) {
        if (m < 1 || m > ambient)
            fail(errc::range, "family member dimension must satisfy 1 <= m <= ambient");
        for (const auto& s : members) {
            if (s.f().q() != f->q() || s.ambient() != ambient)
                fail(errc::mismatch, "family member lives in a different space");
            if (s.dim() != m) fail(errc::mismatch, "family member has wrong dimension");
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        return Family(std::move(f), ambient, m, std::move(members));
    }

    const FieldPtr& field() const { return field_; }
    const Field& f() const { return *field_; }
    int ambient() const { return ambient_; }
    int m() const { return m_; }
    std::size_t size() const { return members_.size(); }
    const std::vector<Subspace>& members() const { return members_; }

    bool operator==(const Family& o) const {
        return field_->q() == o.field_->q() && ambient_ == o.ambient_ && m_ == o.m_ &&
               members_ == o.members_;
    }

    bool operator<(const Family& o) const { return members_ < o.members_; }

private:
    Family(FieldPtr f, int ambient, int m, std::vector<Subspace> members)
        : field_(std::move(f)), ambient_(ambient), m_(m), members_(std::move(members)) {}

    FieldPtr field_;
    int ambient_;
    int m_;
    std::vector<Subspace> members_;
};

/// Sum of all members. Errors on the empty family.
inline Subspace family_span(const Family& fam) {
    if (fam.size() == 0) fail(errc::empty_family, "span of empty family");
    Subspace x = fam.members().front();
    for (std::size_t i = 1; i < fam.size() && x.dim() < fam.ambient(); ++i)
        x = join(x, fam.members()[i]);
    return x;
}

struct IntersectReport {
    bool intersecting;
    /// First violating pair in canonical member order, when not intersecting.
    std::optional<std::pair<std::size_t, std::size_t>> violating;
};

namespace detail {

inline IntersectReport is_intersecting_with_span(const Family& fam, const Subspace& span) {
    // Two m-subspaces of a (2m-1)-dimensional space always share a point,
    // so a family whose span is that small is intersecting with no pair scan.
    // Criterion-scale type families have ~10^5 members; this shortcut is what
    // keeps their checks linear instead of quadratic.
    if (span.dim() <= 2 * fam.m() - 1) return {true, std::nullopt};
    for (std::size_t i = 0; i + 1 < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            if (!intersects(fam.members()[i], fam.members()[j])) return {false, {{i, j}}};
    return {true, std::nullopt};
}

} // namespace detail

/// True iff every unordered pair of members shares at least a point;
/// otherwise reports the first violating pair in canonical order.
inline IntersectReport is_intersecting(const Family& fam) {
    if (fam.size() == 0) return {true, std::nullopt};
    return detail::is_intersecting_with_span(fam, family_span(fam));
}

/// The subfamily of members containing A, order preserved.
inline Family members_containing(const Family& fam, const Subspace& a) {
    if (a.f().q() != fam.f().q() || a.ambient() != fam.ambient())
        fail(errc::mismatch, "restriction subspace lives in a different space");
    std::vector<Subspace> out;
    for (const auto& mbr : fam.members())
        if (contains(mbr, a)) out.push_back(mbr);
    return Family::of(fam.field(), fam.ambient(), fam.m(), std::move(out));
}

struct CoverOptions {
    /// Abort the search after this many explored nodes; the result is then an
    /// upper bound with exact = false.
    std::optional<std::uint64_t> node_budget{};
    /// Exhaustive solver only: reject when candidate-times-member work would
    /// exceed this.
    std::uint64_t work_cap = 5'000'000;
};

struct CoverResult {
    int tau;
    Subspace witness;
    std::uint64_t nodes;
    bool family_intersecting;
    /// True when tau is the certified minimum and witness is the canonical
    /// least cover (within the family span) at that dimension. False only
    /// when a node budget truncated the search, in which case tau is an
    /// upper bound.
    bool exact;
};

namespace detail {

struct CoverSearch {
    const std::vector<Subspace>& members;
    std::optional<std::uint64_t> budget;
    int limit; // hunt covers of dimension <= limit
    std::optional<int> best_dim;
    std::optional<Subspace> best_wit;
    std::uint64_t nodes = 0;
    bool truncated = false;

    int first_missed(const Subspace& t) const {
        for (std::size_t i = 0; i < members.size(); ++i)
            if (!intersects(t, members[i])) return static_cast<int>(i);
        return -1;
    }

    // Branch rule: while some member M has trivial meet with the partial
    // cover T, a cover extending T must contain a point of M, so recurse on
    // T + E over the points E of the first such M. Every cover of dimension
    // <= limit inside the family span is reached as a node, so taking the
    // canonical minimum over recorded covers is sound.
    void dfs(const Subspace& t) {
        if (truncated) return;
        ++nodes;
        if (budget && nodes > *budget) {
            truncated = true;
            return;
        }
        int mi = first_missed(t);
        if (mi < 0) {
            if (!best_dim || t.dim() < *best_dim) {
                best_dim = t.dim();
                best_wit = t;
                limit = t.dim();
            } else if (t.dim() == *best_dim && t < *best_wit) {
                best_wit = t;
            }
            return;
        }
        if (t.dim() + 1 > limit) return;
        for (const Subspace& e : points_of(members[static_cast<std::size_t>(mi)]))
            dfs(join(t, e));
    }
};

} // namespace detail

/// Exact covering number: the minimum dimension of a subspace meeting every
/// member, plus the canonical least witness of that dimension inside the
/// family span. (Any cover yields one inside the span of no greater
/// dimension -- pick a nonzero vector in each intersection with a member --
/// so restricting the search to the span loses nothing.)
///
/// Branch and bound as described at CoverSearch::dfs, seeded with the upper
/// bound min(m, dim X - m + 1) for intersecting input: any member covers an
/// intersecting family, and any (dim X - m + 1)-subspace of the span X meets
/// every member by dimension count alone. When the minimum equals that
/// trivial bound, the witness is found by a direct scan of that layer of the
/// span instead of a depth-m tree walk.
inline CoverResult covering_number(const Family& fam, CoverOptions opt = {}) {
    if (fam.size() == 0) fail(errc::empty_family, "covering number of empty family");
    const Subspace x = family_span(fam);
    const auto inter = detail::is_intersecting_with_span(fam, x);
    const int m = fam.m();
    const int ub_triv = std::max(1, x.dim() - m + 1);
    const int ub = inter.intersecting ? std::min(m, ub_triv) : ub_triv;

    detail::CoverSearch search{fam.members(), opt.node_budget, ub - 1, {}, {}, 0, false};
    search.dfs(Subspace::zero(fam.field(), fam.ambient()));

    if (!search.truncated && !search.best_dim && ub != ub_triv) {
        // Intersecting family spanning at least 2m dimensions with tau = m:
        // rerun to depth m to locate the least m-dimensional cover. (For
        // m = 2 this cannot happen -- pairwise intersecting planes without a
        // common point share a 3-space -- and no desk-scale witness is known
        // for larger m; the branch keeps the solver total anyway.)
        search.limit = m;
        search.dfs(Subspace::zero(fam.field(), fam.ambient()));
    }

    if (search.truncated) {
        if (search.best_dim)
            return {*search.best_dim, *search.best_wit, search.nodes, inter.intersecting, false};
        Subspace fallback = inter.intersecting ? fam.members().front() : x;
        return {fallback.dim(), fallback, search.nodes, inter.intersecting, false};
    }
    if (search.best_dim)
        return {*search.best_dim, *search.best_wit, search.nodes, inter.intersecting, true};

    // tau equals the trivial upper bound: every ub-subspace of the span is a
    // cover, so the witness is simply the least element of that layer.
    std::optional<Subspace> wit;
    SubspaceGen gen(x, ub);
    bool truncated = false;
    while (auto s = gen.next()) {
        ++search.nodes;
        if (opt.node_budget && search.nodes > *opt.node_budget) {
            truncated = true;
            break;
        }
        if (!wit || *s < *wit) wit = std::move(*s);
    }
    if (!wit) { // budget expired before the first layer element
        Subspace fallback = inter.intersecting ? fam.members().front() : x;
        return {fallback.dim(), fallback, search.nodes, inter.intersecting, false};
    }
    if (search.first_missed(*wit) >= 0)
        throw std::logic_error("covering_number: trivial-layer witness fails to cover");
    return {ub, *wit, search.nodes, inter.intersecting, !truncated};
}

/// Independent brute-force route to the same answer: test every s-subspace of
/// the span for s = 1, 2, ... and return the least cover at the first
/// dimension that has one. Guarded by a work cap; used to validate the
/// branch-and-bound solver.
inline CoverResult covering_number_exhaustive(const Family& fam, CoverOptions opt = {}) {
    if (fam.size() == 0) fail(errc::empty_family, "covering number of empty family");
    const Subspace x = family_span(fam);
    const auto inter = detail::is_intersecting_with_span(fam, x);
    std::uint64_t tested = 0;
    for (int s = 1; s <= x.dim(); ++s) {
        if (gaussian(x.dim(), s, fam.f().q()) * static_cast<unsigned long>(fam.size()) >
            QInt(static_cast<unsigned long>(opt.work_cap)))
            fail(errc::size_gate, "exhaustive cover search exceeds the work cap");
        std::optional<Subspace> best;
        SubspaceGen gen(x, s);
        while (auto t = gen.next()) {
            ++tested;
            bool covers = true;
            for (const auto& mbr : fam.members())
                if (!intersects(*t, mbr)) {
                    covers = false;
                    break;
                }
            if (covers && (!best || *t < *best)) best = std::move(*t);
        }
        if (best) return {s, *best, tested, inter.intersecting, true};
    }
    throw std::logic_error("exhaustive cover search found no cover"); // unreachable
}

struct Extension {
    Subspace extended;           // the chosen (dim S + 1)-subspace T
    std::size_t through_extended; // |{F in family : T subseteq F}|
    std::size_t through_base;     // |{F in family : S subseteq F}|
};

/// Given S missed by at least one member, extend S by one dimension through a
/// point of the first missed member, choosing the candidate contained in the
/// most members (ties to the canonical least). The returned count always
/// satisfies |F_T| * [m 1]_q >= |F_S| for intersecting input: every member
/// through S meets the missed member in a point, and there are only [m 1]_q
/// points to share. That bound is re-checked exactly before returning.
inline Extension popular_extension(const Family& fam, const Subspace& s) {
    if (s.f().q() != fam.f().q() || s.ambient() != fam.ambient())
        fail(errc::mismatch, "extension base lives in a different space");
    int mi = -1;
    for (std::size_t i = 0; i < fam.size(); ++i)
        if (!intersects(s, fam.members()[i])) {
            mi = static_cast<int>(i);
            break;
        }
    if (mi < 0) fail(errc::range, "every member already intersects the given subspace");
    std::size_t through_base = 0;
    for (const auto& mbr : fam.members())
        if (contains(mbr, s)) ++through_base;
    std::optional<Subspace> best;
    std::size_t best_count = 0;
    for (const Subspace& e : points_of(fam.members()[static_cast<std::size_t>(mi)])) {
        Subspace t = join(s, e);
        std::size_t cnt = 0;
        for (const auto& mbr : fam.members())
            if (contains(mbr, t)) ++cnt;
        if (!best || cnt > best_count || (cnt == best_count && t < *best)) {
            best = std::move(t);
            best_count = cnt;
        }
    }
    if (QInt(static_cast<unsigned long>(best_count)) * gaussian(fam.m(), 1, fam.f().q()) <
        QInt(static_cast<unsigned long>(through_base)))
        fail(errc::range, "extension pigeonhole bound violated; is the family intersecting?");
    return {std::move(*best), best_count, through_base};
}

} // namespace qcover
