#pragma once

#include <functional>
#include <future>
#include <iomanip>
#include <ostream>

#include "qcover/inequalities.hpp"
#include "qcover/io.hpp"
#include "qcover/sampling.hpp"

namespace qcover {

/// Evaluate pred(i) for i in [0, count) across `jobs` workers and AND the
/// results in index order, so the outcome does not depend on scheduling.
inline bool parallel_all(std::size_t count, int jobs, const std::function<bool(std::size_t)>& pred) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i)
            if (!pred(i)) return false;
        return true;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    std::vector<std::future<bool>> futs;
    for (std::size_t w = 0; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&, w] {
            bool ok = true;
            for (std::size_t i = w; i < count; i += workers) ok = pred(i) && ok;
            return ok;
        }));
    bool ok = true;
    for (auto& fu : futs) ok = fu.get() && ok;
    return ok;
}

namespace detail {

// Independent slow multiplication: schoolbook polynomial product reduced by
// the field modulus, used to cross-check the log/antilog tables.
inline Elem reference_mul(const Field& f, Elem a, Elem b) {
    const unsigned p = f.p(), e = f.e();
    std::vector<unsigned> da(e, 0), db(e, 0), prod(2 * e, 0);
    for (unsigned i = 0; i < e; ++i, a = static_cast<Elem>(a / p)) da[i] = a % p;
    for (unsigned i = 0; i < e; ++i, b = static_cast<Elem>(b / p)) db[i] = b % p;
    for (unsigned i = 0; i < e; ++i)
        for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    const auto& mod = f.modulus();
    for (unsigned d = 2 * e - 1; d >= e; --d) {
        unsigned lead = prod[d];
        if (lead == 0) continue;
        for (unsigned i = 0; i <= e; ++i) {
            unsigned& c = prod[d - e + i];
            c = (c + p - (lead * mod[i]) % p) % p;
        }
    }
    unsigned out = 0, mult = 1;
    for (unsigned i = 0; i < e; ++i, mult *= p) out += prod[i] * mult;
    return static_cast<Elem>(out);
}

} // namespace detail

class Selftest {
public:
    Selftest(std::ostream& out, bool quick, int jobs) : out_(out), quick_(quick), jobs_(jobs) {}

    bool run() {
        section("field-axioms", [&] { return field_axioms(); });
        section("matrix-reduction", [&] { return matrix_reduction(); });
        section("subspace-lattice", [&] { return subspace_lattice(); });
        section("transversal-construction", [&] { return transversal(); });
        section("counting-formulas", [&] { return counting(); });
        section("cover-solver", [&] { return cover_solver(); });
        section("inequalities", [&] { return inequalities(); });
        section("family-io", [&] { return family_io(); });
        section("max-search", [&] { return max_search(); });
        return all_ok_;
    }

private:
    void section(const char* name, const std::function<bool()>& fn) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& ex) {
            out_ << "FAIL " << name << " (" << ex.what() << ")\n";
            all_ok_ = false;
            return;
        }
        out_ << (ok ? "ok   " : "FAIL ") << name << '\n';
        all_ok_ = all_ok_ && ok;
    }

    bool field_axioms() {
        std::vector<unsigned long> qs = quick_ ? std::vector<unsigned long>{2, 4, 5}
                                               : std::vector<unsigned long>{2, 3, 4, 5, 7, 8, 9};
        for (unsigned long q : qs) {
            Field f = Field::make(q);
            for (Elem a = 0; a < q; ++a)
                for (Elem b = 0; b < q; ++b) {
                    if (f.add(a, b) != f.add(b, a)) return false;
                    if (f.mul(a, b) != f.mul(b, a)) return false;
                    if (f.mul(a, b) != detail::reference_mul(f, a, b)) return false;
                    if (a != 0 && f.mul(a, f.inv(a)) != 1) return false;
                    for (Elem c = 0; c < q; ++c) {
                        if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) return false;
                        if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) return false;
                        if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) return false;
                    }
                }
        }
        return true;
    }

    bool matrix_reduction() {
        std::mt19937_64 rng(kDefaultSeed);
        for (unsigned long q : {2UL, 3UL, 4UL, 5UL}) {
            FieldPtr f = Field::make_shared(q);
            std::uniform_int_distribution<unsigned> dist(0, static_cast<unsigned>(q - 1));
            for (int iter = 0; iter < (quick_ ? 10 : 40); ++iter) {
                Matrix m(3 + static_cast<int>(rng() % 3), 4 + static_cast<int>(rng() % 3));
                for (auto& x : m.a) x = static_cast<Elem>(dist(rng));
                Rref r = rref(*f, m);
                if (rref(*f, r.basis).basis != r.basis) return false; // idempotent
                Matrix k = kernel(*f, m);
                if (k.rows != m.cols - r.rank()) return false; // rank-nullity
                for (int i = 0; i < k.rows; ++i) {             // rows annihilated
                    for (int row = 0; row < m.rows; ++row) {
                        Elem s = 0;
                        for (int c = 0; c < m.cols; ++c)
                            s = f->add(s, f->mul(m.at(row, c), k.at(i, c)));
                        if (s != 0) return false;
                    }
                }
            }
        }
        return true;
    }

    bool subspace_lattice() {
        std::mt19937_64 rng(kDefaultSeed + 1);
        for (unsigned long q : {2UL, 3UL}) {
            FieldPtr f = Field::make_shared(q);
            const int n = quick_ ? 4 : 5;
            for (int iter = 0; iter < (quick_ ? 20 : 60); ++iter) {
                Subspace a = random_subspace(f, n, static_cast<int>(rng() % (n + 1)), rng);
                Subspace b = random_subspace(f, n, static_cast<int>(rng() % (n + 1)), rng);
                if (meet(a, b).dim() + join(a, b).dim() != a.dim() + b.dim()) return false;
                if (intersects(a, b) != (meet(a, b).dim() >= 1)) return false;
            }
            // enumeration count vs counting formula, and distinctness
            for (int nn = 1; nn <= (quick_ ? 3 : 4); ++nn) {
                Subspace full = Subspace::full(f, nn);
                for (int d = 0; d <= nn; ++d) {
                    auto subs = all_subspaces(full, d);
                    if (gaussian(nn, d, q) != static_cast<unsigned long>(subs.size())) return false;
                    std::sort(subs.begin(), subs.end());
                    if (std::adjacent_find(subs.begin(), subs.end()) != subs.end()) return false;
                }
            }
        }
        return true;
    }

    bool transversal() {
        std::mt19937_64 rng(kDefaultSeed + 2);
        for (unsigned long q : {2UL, 3UL}) {
            FieldPtr f = Field::make_shared(q);
            for (int iter = 0; iter < (quick_ ? 25 : 100); ++iter) {
                const int n = 3 + static_cast<int>(rng() % 3);
                const int a = 1 + static_cast<int>(rng() % n);
                const int b = static_cast<int>(rng() % (a + 1));
                const int cmax = std::min(a, b), cmin = std::max(0, a + b - n);
                if (cmin > cmax) continue;
                const int c = cmin + static_cast<int>(rng() % (cmax - cmin + 1));
                const int d = static_cast<int>(rng() % (a - b + 1));
                auto [sa, sb] = random_pair_with_meet(f, n, a, b, c, rng);
                Subspace s = transversal_subspace(sa, sb, d);
                if (s.dim() != b - c + d) return false;
                if (meet(s, sa).dim() != d) return false;
                if (meet(s, sb).dim() != 0) return false;
                if (!contains(join(sa, sb), s)) return false;
            }
        }
        return true;
    }

    bool counting() {
        for (unsigned long q : {2UL, 3UL, 4UL, 5UL})
            for (int n = 1; n <= (quick_ ? 6 : 8); ++n)
                for (int m = 1; m <= n; ++m) {
                    QInt lhs = gaussian(n, m, q);
                    QInt rhs = qint_pow(q, static_cast<unsigned long>(m)) *
                                   gaussian(n - 1, m, q) +
                               gaussian(n - 1, m - 1, q);
                    if (lhs != rhs) return false;                      // Pascal recurrence
                    if (lhs != gaussian(n, n - m, q)) return false;    // symmetry
                }
        // type counts against direct enumeration over a small singular model
        FieldPtr f2 = Field::make_shared(2);
        for (int n = 1; n <= 3; ++n)
            for (int l = 0; n + l <= 4; ++l) {
                SingularSpace sing(f2, n, l);
                Subspace full = Subspace::full(f2, n + l);
                for (int m = 0; m <= n + l; ++m)
                    for (int k = 0; k <= m; ++k)
                        (void)subspaces_of_type(sing, full, m, k); // formula asserted inside
            }
        return true;
    }

    bool cover_solver() {
        std::mt19937_64 rng(kDefaultSeed + 3);
        for (unsigned long q : {2UL, 3UL}) {
            FieldPtr f = Field::make_shared(q);
            Family ext = extremal_family(f, 3, 2);
            CoverResult bb = covering_number(ext);
            CoverResult ex = covering_number_exhaustive(ext);
            if (bb.tau != 2 || ex.tau != 2 || !(bb.witness == ex.witness)) return false;
            Family triv = trivial_family(f, 4, 2, Subspace::span(f, 4, {{1, 0, 0, 0}}));
            if (covering_number(triv).tau != 1) return false;
            // random member subsets of the 2-subspace layer of F_q^4
            auto layer = all_subspaces(Subspace::full(f, 4), 2);
            for (int iter = 0; iter < (quick_ ? 5 : 15); ++iter) {
                std::vector<Subspace> members;
                for (const auto& s : layer)
                    if (rng() % 4 == 0) members.push_back(s);
                if (members.empty()) continue;
                Family fam = Family::of(f, 4, 2, std::move(members));
                CoverResult lhs = covering_number(fam);
                CoverResult rhs = covering_number_exhaustive(fam);
                if (lhs.tau != rhs.tau || !(lhs.witness == rhs.witness)) return false;
            }
        }
        return true;
    }

    bool inequalities() {
        const int mmax = quick_ ? 4 : 6;
        std::vector<std::pair<int, unsigned long>> cases;
        for (int m = 3; m <= mmax; ++m)
            for (unsigned long q : prime_powers(m, 16)) cases.emplace_back(m, q);
        bool ok = parallel_all(cases.size(), jobs_, [&](std::size_t i) {
            auto [m, q] = cases[i];
            if (!verify_size_bound(m, q).all_hold()) return false;
            if (m >= 4 && !verify_size_bound_chain(m, q).all_hold()) return false;
            return true;
        });
        if (!ok) return false;
        for (long a = 2; a <= 8; ++a)
            for (long b = 1; b < a; ++b)
                for (unsigned long q : {2UL, 3UL, 5UL})
                    if (!verify_power_bounds(a, b, q).all_hold()) return false;
        for (int m = 3; m <= (quick_ ? 3 : 4); ++m)
            for (unsigned long q : prime_powers(m + 2, 16))
                for (int k = 0; k <= 2; ++k) {
                    int t = extremal_t(m, k, 2 * m - 1);
                    int n = k == 0 ? 2 * m - 1 : std::max(1, m - k);
                    int l = k == 0 ? 0 : t;
                    if (!verify_singular_bound(m, k, n, l, q).all_hold()) return false;
                }
        return true;
    }

    bool family_io() {
        FieldPtr f3 = Field::make_shared(3);
        Family fam = extremal_family(f3, 4, 2);
        std::string txt = family_to_string(fam);
        std::stringstream ss(txt);
        LoadedFamily back = read_family(ss);
        if (!(back.family == fam)) return false;
        if (family_to_string(back.family) != txt) return false;
        // scrambled bases canonicalize to the same family
        std::string scrambled = "q=3 n=3 m=2 count=1\n2 0 0;2 1 0\n";
        std::stringstream ss2(scrambled);
        Family one = read_family(ss2).family;
        return one.members().front() ==
               Subspace::span(f3, 3, {{1, 0, 0}, {0, 1, 0}});
    }

    bool max_search() {
        SearchParams p;
        p.q = 2;
        p.n = 4;
        p.m = 2;
        p.min_tau = 2;
        SearchCertificate cert = search_max_family(p);
        if (cert.best_size != 7 || !cert.optimal) return false;
        for (const auto& fam : cert.optima)
            if (!is_span_complete(fam)) return false;
        p.target = 8;
        SearchCertificate dec = search_family_exists(p);
        return !dec.found && dec.optimal;
    }

    std::ostream& out_;
    bool quick_;
    int jobs_;
    bool all_ok_ = true;
};

inline bool run_selftest(std::ostream& out, bool quick = false, int jobs = 1) {
    return Selftest(out, quick, jobs).run();
}

} // namespace qcover
