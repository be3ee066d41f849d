#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "qcover/matrix.hpp"

namespace qcover {

/// A subspace of F_q^N held as its reduced-row-echelon basis, the unique
/// canonical representative of its row space. Equality is plain data
/// equality; the ordering below (dimension, then flattened basis codes) is
/// the canonical order used for family members, witnesses and tie-breaks.
class Subspace {
public:
    static Subspace zero(FieldPtr f, int ambient) {
        return Subspace(std::move(f), ambient, Matrix(0, ambient));
    }

    static Subspace full(FieldPtr f, int ambient) {
        return Subspace(std::move(f), ambient, Matrix::identity(ambient));
    }

    /// Canonical span of arbitrary row vectors of length `ambient`.
    static Subspace span(FieldPtr f, int ambient, const std::vector<std::vector<Elem>>& rows) {
        Matrix m(0, ambient);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != ambient)
                fail(errc::mismatch, "span: row length differs from ambient dimension");
            m.append_row(r);
        }
        return from_rows(std::move(f), std::move(m));
    }

    /// Canonicalize a stacked row matrix (rows may be dependent).
    static Subspace from_rows(FieldPtr f, Matrix m) {
        Matrix basis = rref(*f, std::move(m)).basis;
        return Subspace(std::move(f), basis.cols, std::move(basis));
    }

    /// Wrap a matrix that is already a canonical rref basis.
    static Subspace from_canonical(FieldPtr f, Matrix basis) {
        return Subspace(std::move(f), basis.cols, std::move(basis));
    }

    const FieldPtr& field() const { return field_; }
    const Field& f() const { return *field_; }
    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows; }
    const Matrix& basis() const { return basis_; }

    bool operator==(const Subspace& o) const {
        return field_->q() == o.field_->q() && ambient_ == o.ambient_ && basis_ == o.basis_;
    }

    std::strong_ordering operator<=>(const Subspace& o) const {
        if (auto c = ambient_ <=> o.ambient_; c != 0) return c;
        if (auto c = dim() <=> o.dim(); c != 0) return c;
        return std::lexicographical_compare_three_way(basis_.a.begin(), basis_.a.end(),
                                                      o.basis_.a.begin(), o.basis_.a.end());
    }

private:
    Subspace(FieldPtr f, int ambient, Matrix basis)
        : field_(std::move(f)), ambient_(ambient), basis_(std::move(basis)) {}

    FieldPtr field_;
    int ambient_;
    Matrix basis_;
};

inline void check_compatible(const Subspace& a, const Subspace& b) {
    if (a.f().q() != b.f().q() || a.ambient() != b.ambient())
        fail(errc::mismatch, "subspaces live in different spaces");
}

/// A + B, the canonical span of both bases.
inline Subspace join(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    Matrix m(0, a.ambient());
    m.a = a.basis().a;
    m.rows = a.dim();
    m.a.insert(m.a.end(), b.basis().a.begin(), b.basis().a.end());
    m.rows += b.dim();
    return Subspace::from_rows(a.field(), std::move(m));
}

/// B subseteq A: every basis row of B reduces to zero against A's rref basis.
inline bool contains(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    if (b.dim() > a.dim()) return false;
    const Field& f = a.f();
    const Matrix& ab = a.basis();
    const int n = a.ambient();
    thread_local std::vector<int> pivots;
    pivots.resize(static_cast<std::size_t>(a.dim()));
    for (int r = 0; r < a.dim(); ++r) {
        int pc = 0;
        while (ab.at(r, pc) == 0) ++pc;
        pivots[static_cast<std::size_t>(r)] = pc;
    }
    thread_local std::vector<Elem> row;
    for (int i = 0; i < b.dim(); ++i) {
        row.assign(b.basis().a.begin() + static_cast<std::ptrdiff_t>(i) * n,
                   b.basis().a.begin() + static_cast<std::ptrdiff_t>(i + 1) * n);
        for (int r = 0; r < a.dim(); ++r) {
            Elem coef = row[static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])];
            if (coef == 0) continue;
            for (int c = pivots[static_cast<std::size_t>(r)]; c < n; ++c)
                row[static_cast<std::size_t>(c)] =
                    f.sub(row[static_cast<std::size_t>(c)], f.mul(coef, ab.at(r, c)));
        }
        for (Elem v : row)
            if (v != 0) return false;
    }
    return true;
}

/// dim(A cap B) >= 1, via the rank of the stacked bases. This is the hot
/// primitive of the covering solver; it avoids computing the meet itself.
inline bool intersects(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    if (a.dim() == 0 || b.dim() == 0) return false;
    if (a.dim() + b.dim() > a.ambient()) return true;
    const Field& f = a.f();
    const int n = a.ambient();
    // Reduce b's rows against a's rref basis, then rank the residues:
    // dim(A cap B) = dim B - rank(residues).
    thread_local std::vector<Elem> res;
    res.assign(b.basis().a.begin(), b.basis().a.end());
    const Matrix& ab = a.basis();
    thread_local std::vector<int> pivots;
    pivots.resize(static_cast<std::size_t>(a.dim()));
    for (int r = 0; r < a.dim(); ++r) {
        int pc = 0;
        while (ab.at(r, pc) == 0) ++pc;
        pivots[static_cast<std::size_t>(r)] = pc;
    }
    for (int i = 0; i < b.dim(); ++i) {
        Elem* row = res.data() + static_cast<std::ptrdiff_t>(i) * n;
        for (int r = 0; r < a.dim(); ++r) {
            Elem coef = row[pivots[static_cast<std::size_t>(r)]];
            if (coef == 0) continue;
            for (int c = pivots[static_cast<std::size_t>(r)]; c < n; ++c)
                row[c] = f.sub(row[c], f.mul(coef, ab.at(r, c)));
        }
    }
    // Forward-eliminate the residues in place.
    int rk = 0;
    for (int c = 0; c < n && rk < b.dim(); ++c) {
        int piv = -1;
        for (int i = rk; i < b.dim(); ++i)
            if (res[static_cast<std::size_t>(i) * n + c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rk)
            for (int j = c; j < n; ++j)
                std::swap(res[static_cast<std::size_t>(piv) * n + j],
                          res[static_cast<std::size_t>(rk) * n + j]);
        Elem ip = f.inv(res[static_cast<std::size_t>(rk) * n + c]);
        for (int i = rk + 1; i < b.dim(); ++i) {
            Elem t = res[static_cast<std::size_t>(i) * n + c];
            if (t == 0) continue;
            Elem s = f.mul(t, ip);
            for (int j = c; j < n; ++j)
                res[static_cast<std::size_t>(i) * n + j] =
                    f.sub(res[static_cast<std::size_t>(i) * n + j],
                          f.mul(s, res[static_cast<std::size_t>(rk) * n + j]));
        }
        ++rk;
    }
    return rk < b.dim();
}

/// dim(A cap B) by rank count alone, without building the intersection.
inline int meet_dim(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    Matrix m(0, a.ambient());
    m.a = a.basis().a;
    m.rows = a.dim();
    m.a.insert(m.a.end(), b.basis().a.begin(), b.basis().a.end());
    m.rows += b.dim();
    return a.dim() + b.dim() - rank(a.f(), std::move(m));
}

/// A cap B, computed from the kernel of the stacked coefficient system
/// { (u, v) : u A = v B }. The modular law dim(meet) + dim(join) =
/// dim A + dim B is asserted after every call.
inline Subspace meet(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    const Field& f = a.f();
    const int n = a.ambient();
    const int da = a.dim(), db = b.dim();
    Matrix sys(n, da + db);
    for (int c = 0; c < n; ++c) {
        for (int i = 0; i < da; ++i) sys.at(c, i) = a.basis().at(i, c);
        for (int j = 0; j < db; ++j) sys.at(c, da + j) = f.neg(b.basis().at(j, c));
    }
    Matrix ker = kernel(f, sys);
    Matrix rows(ker.rows, n);
    for (int k = 0; k < ker.rows; ++k)
        for (int i = 0; i < da; ++i) {
            Elem u = ker.at(k, i);
            if (u == 0) continue;
            for (int c = 0; c < n; ++c)
                rows.at(k, c) = f.add(rows.at(k, c), f.mul(u, a.basis().at(i, c)));
        }
    Subspace out = Subspace::from_rows(a.field(), std::move(rows));
    if (out.dim() + join(a, b).dim() != da + db)
        throw std::logic_error("modular law violated in meet()");
    return out;
}

namespace detail {

// d-subsets of {0..r-1} in colexicographic order.
inline std::vector<std::vector<int>> colex_combinations(int r, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> comb(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) comb[static_cast<std::size_t>(i)] = i;
    if (d == 0) {
        out.push_back({});
        return out;
    }
    if (d > r) return out;
    while (true) {
        out.push_back(comb);
        // colex successor: bump the smallest element that can move right
        // without colliding, reset everything below it
        int i = 0;
        while (i + 1 < d && comb[static_cast<std::size_t>(i)] + 1 ==
                                comb[static_cast<std::size_t>(i + 1)])
            ++i;
        if (comb[static_cast<std::size_t>(i)] + 1 >=
            (i + 1 < d ? comb[static_cast<std::size_t>(i + 1)] : r))
            break;
        ++comb[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) comb[static_cast<std::size_t>(j)] = j;
    }
    return out;
}

} // namespace detail

/// Enumerates every d-subspace of X exactly once, in a deterministic order:
/// canonical matrices relative to X's basis, pivot-column sets in
/// colexicographic order, free entries counted like a base-q odometer over
/// the row-major free positions (last position fastest). The total number of
/// yields equals the Gaussian binomial [dim X, d]_q.
class SubspaceGen {
public:
    SubspaceGen(const Subspace& x, int d) : x_(x), d_(d) {
        if (d < 0 || d > x.dim()) fail(errc::range, "enumeration dimension out of range");
        pivot_sets_ = detail::colex_combinations(x.dim(), d);
        identity_chart_ = x.dim() == x.ambient();
        load(0);
    }

    std::optional<Subspace> next() {
        if (set_idx_ >= pivot_sets_.size()) return std::nullopt;
        Subspace out = materialize();
        advance();
        return out;
    }

private:
    void load(std::size_t idx) {
        set_idx_ = idx;
        if (set_idx_ >= pivot_sets_.size()) return;
        const auto& piv = pivot_sets_[set_idx_];
        is_pivot_.assign(static_cast<std::size_t>(x_.dim()), false);
        for (int c : piv) is_pivot_[static_cast<std::size_t>(c)] = true;
        free_pos_.clear();
        for (int i = 0; i < d_; ++i)
            for (int j = piv[static_cast<std::size_t>(i)] + 1; j < x_.dim(); ++j)
                if (!is_pivot_[static_cast<std::size_t>(j)])
                    free_pos_.emplace_back(i, j);
        digits_.assign(free_pos_.size(), 0);
    }

    Subspace materialize() const {
        const auto& piv = pivot_sets_[set_idx_];
        Matrix rel(d_, x_.dim());
        for (int i = 0; i < d_; ++i) rel.at(i, piv[static_cast<std::size_t>(i)]) = 1;
        for (std::size_t k = 0; k < free_pos_.size(); ++k)
            rel.at(free_pos_[k].first, free_pos_[k].second) = digits_[k];
        if (identity_chart_) return Subspace::from_canonical(x_.field(), std::move(rel));
        return Subspace::from_rows(x_.field(), mat_mul(x_.f(), rel, x_.basis()));
    }

    void advance() {
        const Elem qmax = static_cast<Elem>(x_.f().q() - 1);
        std::size_t k = digits_.size();
        while (k > 0) {
            --k;
            if (digits_[k] < qmax) {
                ++digits_[k];
                return;
            }
            digits_[k] = 0;
        }
        load(set_idx_ + 1);
    }

    Subspace x_;
    int d_;
    bool identity_chart_ = false;
    std::vector<std::vector<int>> pivot_sets_;
    std::size_t set_idx_ = 0;
    std::vector<bool> is_pivot_;
    std::vector<std::pair<int, int>> free_pos_;
    std::vector<Elem> digits_;
};

inline SubspaceGen subspaces_of(const Subspace& x, int d) { return SubspaceGen(x, d); }

inline std::vector<Subspace> all_subspaces(const Subspace& x, int d) {
    std::vector<Subspace> out;
    SubspaceGen gen(x, d);
    while (auto s = gen.next()) out.push_back(std::move(*s));
    return out;
}

/// All 1-subspaces of X.
inline std::vector<Subspace> points_of(const Subspace& x) { return all_subspaces(x, 1); }

namespace detail {

// The raw rows adjoined by the greedy extension of S inside X: scan X's
// basis rows in order, keep each row independent of the span so far, stop
// after `count` rows. Deterministic by construction.
inline std::vector<std::vector<Elem>> greedy_extension_rows(const Subspace& s, const Subspace& x,
                                                            int count) {
    const Field& f = x.f();
    Matrix work = s.basis();
    std::vector<std::vector<Elem>> added;
    int cur = rank(f, work);
    for (int r = 0; r < x.dim() && static_cast<int>(added.size()) < count; ++r) {
        Matrix trial = work;
        trial.append_row(x.basis().row(r));
        int rk = rank(f, trial);
        if (rk > cur) {
            work = std::move(trial);
            cur = rk;
            added.push_back(x.basis().row(r));
        }
    }
    return added;
}

} // namespace detail

/// Deterministic d-subspace T with S subseteq T subseteq X: greedily adjoins
/// the first basis rows of X that are independent of the span so far.
inline Subspace extend_within(const Subspace& s, const Subspace& x, int d) {
    check_compatible(s, x);
    if (!contains(x, s)) fail(errc::range, "extend_within: S not contained in X");
    if (d < s.dim() || d > x.dim()) fail(errc::range, "extend_within: dimension out of range");
    auto added = detail::greedy_extension_rows(s, x, d - s.dim());
    if (static_cast<int>(added.size()) != d - s.dim())
        throw std::logic_error("greedy extension found too few independent rows");
    Matrix m = s.basis();
    for (const auto& r : added) m.append_row(r);
    return Subspace::from_rows(s.field(), std::move(m));
}

/// Builds a subspace S of A + B with dim S = dim B - dim(A cap B) + d,
/// dim(S cap A) = d and S cap B = 0, for any 0 <= d <= dim A - dim B.
///
/// Construction: when B subseteq A, S is spanned by the d greedy extension
/// rows of B inside A. Otherwise pick complements A1 subseteq A and
/// B1 subseteq B of C = A cap B with dim A1 = b-c+d and dim B1 = b-c (greedy,
/// deterministic) with bases {alpha_i}, {beta_i}; S is spanned by the sums
/// alpha_i + beta_i for i <= b-c plus the leftover alpha rows when d >= 1.
/// All postconditions are re-verified before returning.
inline Subspace transversal_subspace(const Subspace& a, const Subspace& b, int d) {
    check_compatible(a, b);
    const Subspace c = meet(a, b);
    const int av = a.dim(), bv = b.dim(), cv = c.dim();
    if (d < 0 || d > av - bv)
        fail(errc::range, "transversal_subspace: need 0 <= d <= dim A - dim B");
    const Field& f = a.f();
    const int n = a.ambient();
    Matrix rows(0, n);
    if (cv == bv) { // B inside A
        for (const auto& r : detail::greedy_extension_rows(b, a, d)) rows.append_row(r);
    } else {
        auto alpha = detail::greedy_extension_rows(c, a, bv - cv + d);
        auto beta = detail::greedy_extension_rows(c, b, bv - cv);
        if (static_cast<int>(alpha.size()) != bv - cv + d ||
            static_cast<int>(beta.size()) != bv - cv)
            throw std::logic_error("transversal_subspace: complement extension too short");
        for (int i = 0; i < bv - cv; ++i) {
            std::vector<Elem> sum(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j)
                sum[static_cast<std::size_t>(j)] =
                    f.add(alpha[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                          beta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            rows.append_row(sum);
        }
        for (int i = bv - cv; i < bv - cv + d; ++i)
            rows.append_row(alpha[static_cast<std::size_t>(i)]);
    }
    Subspace s = Subspace::from_rows(a.field(), std::move(rows));
    if (s.dim() != bv - cv + d || meet(s, a).dim() != d || meet(s, b).dim() != 0 ||
        !contains(join(a, b), s))
        throw std::logic_error("transversal_subspace postcondition failed");
    return s;
}

} // namespace qcover
