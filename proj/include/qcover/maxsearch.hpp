#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcover/family.hpp"

namespace qcover {

struct SearchParams {
    unsigned long q = 2;
    int n = 3;
    int m = 2;
    int min_tau = 1;
    std::optional<std::size_t> target{}; // decision form when set
    /// Reject instances with more m-subspaces than this unless force is set.
    std::size_t vertex_gate = 200;
    bool force = false;
};

struct SearchCertificate {
    SearchParams params;
    std::size_t best_size = 0;
    std::optional<Family> witness; // canonical least optimum / first found family
    std::vector<Family> optima;    // maximize form: every optimum, sorted
    bool found = false;
    bool optimal = false; // true only when the search space was exhausted
    std::uint64_t nodes = 0;
    double wall_seconds = 0.0;
};

namespace detail {

// Branch-and-bound over the intersection graph of all m-subspaces: vertices
// ordered by descending degree (ties in canonical subspace order), greedy
// colouring as the clique bound. Every clique is visited at most once, and a
// branch is cut only when it cannot reach the current best size, so ties are
// kept and the optimum set is enumerated completely.
struct CliqueEngine {
    std::vector<Subspace> verts; // search order
    std::vector<std::vector<std::uint64_t>> adj;
    std::vector<std::vector<std::uint64_t>> pmask; // per-vertex point-incidence bits
    std::size_t pblocks = 0;
    FieldPtr field;
    int ambient = 0;
    int m = 0;
    int min_tau = 1;

    std::size_t best = 0;
    std::vector<std::vector<int>> optima;
    std::optional<std::size_t> target;
    bool found = false;
    std::vector<int> found_clique;
    std::uint64_t nodes = 0;

    bool adjacent(int u, int v) const { return (adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1; }

    bool feasible(const std::vector<int>& clique, const std::vector<std::uint64_t>& kappa) const {
        if (min_tau <= 1) return true;
        if (min_tau == 2) {
            for (std::uint64_t b : kappa)
                if (b) return false; // a surviving common point means tau = 1
            return true;
        }
        std::vector<Subspace> members;
        members.reserve(clique.size());
        for (int v : clique) members.push_back(verts[static_cast<std::size_t>(v)]);
        Family fam = Family::of(field, ambient, m, std::move(members));
        return covering_number(fam).tau >= min_tau;
    }

    void record(const std::vector<int>& clique, const std::vector<std::uint64_t>& kappa) {
        if (clique.empty()) return;
        if (target) {
            if (clique.size() >= *target && feasible(clique, kappa)) {
                found = true;
                found_clique = clique;
            }
            return;
        }
        if (clique.size() >= std::max<std::size_t>(best, 1) && feasible(clique, kappa)) {
            if (clique.size() > best) {
                best = clique.size();
                optima.clear();
            }
            optima.push_back(clique);
        }
    }

    void expand(std::vector<int>& clique, const std::vector<std::uint64_t>& kappa,
                const std::vector<int>& cand) {
        ++nodes;
        record(clique, kappa);
        if (found || cand.empty()) return;

        // greedy colouring: order = colour classes concatenated, colour
        // values non-decreasing along `order`
        std::vector<std::vector<int>> classes;
        for (int v : cand) {
            std::size_t c = 0;
            for (;; ++c) {
                if (c == classes.size()) {
                    classes.emplace_back();
                    break;
                }
                bool clash = false;
                for (int u : classes[c])
                    if (adjacent(u, v)) {
                        clash = true;
                        break;
                    }
                if (!clash) break;
            }
            classes[c].push_back(v);
        }
        std::vector<int> order;
        std::vector<std::size_t> colour;
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (int v : classes[c]) {
                order.push_back(v);
                colour.push_back(c + 1);
            }

        for (std::size_t i = order.size(); i-- > 0;) {
            std::size_t needed = target ? *target : std::max<std::size_t>(best, 1);
            if (clique.size() + colour[i] < needed) return; // colours only shrink leftwards
            int v = order[i];
            clique.push_back(v);
            std::vector<std::uint64_t> kap(kappa);
            if (pblocks)
                for (std::size_t b = 0; b < pblocks; ++b)
                    kap[b] &= pmask[static_cast<std::size_t>(v)][b];
            std::vector<int> next;
            for (std::size_t j = 0; j < i; ++j)
                if (adjacent(order[j], v)) next.push_back(order[j]);
            expand(clique, kap, next);
            clique.pop_back();
            if (found) return;
        }
    }
};

inline CliqueEngine build_engine(const SearchParams& params) {
    FieldPtr f = Field::make_shared(params.q);
    if (params.n < 1 || params.m < 1 || params.m > params.n)
        fail(errc::range, "search requires 1 <= m <= n");
    if (params.min_tau < 1) fail(errc::range, "search requires min_tau >= 1");
    QInt vcount = gaussian(params.n, params.m, params.q);
    if (!params.force && vcount > QInt(static_cast<unsigned long>(params.vertex_gate)))
        fail(errc::size_gate, "infeasible at desk scale: " + vcount.get_str() +
                                  " subspaces exceed the gate of " +
                                  std::to_string(params.vertex_gate));

    CliqueEngine eng;
    eng.field = f;
    eng.ambient = params.n;
    eng.m = params.m;
    eng.min_tau = params.min_tau;
    eng.target = params.target;

    Subspace v = Subspace::full(f, params.n);
    eng.verts = all_subspaces(v, params.m);
    std::sort(eng.verts.begin(), eng.verts.end());
    const int nv = static_cast<int>(eng.verts.size());

    // adjacency on canonical indices, then reorder by descending degree
    std::vector<std::vector<std::uint64_t>> cadj(
        static_cast<std::size_t>(nv),
        std::vector<std::uint64_t>((static_cast<std::size_t>(nv) + 63) / 64, 0));
    std::vector<int> degree(static_cast<std::size_t>(nv), 0);
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (intersects(eng.verts[static_cast<std::size_t>(i)],
                           eng.verts[static_cast<std::size_t>(j)])) {
                cadj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) >> 6] |=
                    std::uint64_t{1} << (j & 63);
                cadj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i) >> 6] |=
                    std::uint64_t{1} << (i & 63);
                ++degree[static_cast<std::size_t>(i)];
                ++degree[static_cast<std::size_t>(j)];
            }
    std::vector<int> perm(static_cast<std::size_t>(nv));
    for (int i = 0; i < nv; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) {
        return degree[static_cast<std::size_t>(x)] > degree[static_cast<std::size_t>(y)];
    });

    std::vector<Subspace> reordered;
    reordered.reserve(static_cast<std::size_t>(nv));
    for (int i = 0; i < nv; ++i)
        reordered.push_back(eng.verts[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
    eng.adj.assign(static_cast<std::size_t>(nv),
                   std::vector<std::uint64_t>((static_cast<std::size_t>(nv) + 63) / 64, 0));
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
            int ci = perm[static_cast<std::size_t>(i)], cj = perm[static_cast<std::size_t>(j)];
            if ((cadj[static_cast<std::size_t>(ci)][static_cast<std::size_t>(cj) >> 6] >>
                 (cj & 63)) &
                1)
                eng.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) >> 6] |=
                    std::uint64_t{1} << (j & 63);
        }
    eng.verts = std::move(reordered);

    if (params.min_tau == 2) {
        std::vector<Subspace> pts = points_of(v);
        eng.pblocks = (pts.size() + 63) / 64;
        eng.pmask.assign(static_cast<std::size_t>(nv),
                         std::vector<std::uint64_t>(eng.pblocks, 0));
        for (int i = 0; i < nv; ++i)
            for (std::size_t pi = 0; pi < pts.size(); ++pi)
                if (contains(eng.verts[static_cast<std::size_t>(i)], pts[pi]))
                    eng.pmask[static_cast<std::size_t>(i)][pi >> 6] |= std::uint64_t{1}
                                                                       << (pi & 63);
    }
    return eng;
}

inline Family clique_to_family(const CliqueEngine& eng, const std::vector<int>& clique) {
    std::vector<Subspace> members;
    members.reserve(clique.size());
    for (int v : clique) members.push_back(eng.verts[static_cast<std::size_t>(v)]);
    return Family::of(eng.field, eng.ambient, eng.m, std::move(members));
}

inline void run_engine(CliqueEngine& eng) {
    std::vector<int> clique;
    std::vector<std::uint64_t> kappa(eng.pblocks, 0);
    if (eng.pblocks) {
        // universe mask: exactly one bit per point of the ambient space
        auto npts = static_cast<std::size_t>(
            mpz_get_ui(gaussian(eng.ambient, 1, eng.field->q()).get_mpz_t()));
        for (std::size_t i = 0; i < npts; ++i) kappa[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    std::vector<int> cand(eng.verts.size());
    for (std::size_t i = 0; i < cand.size(); ++i) cand[i] = static_cast<int>(i);
    eng.expand(clique, kappa, cand);
}

} // namespace detail

/// Maximum-size intersecting family of m-subspaces of F_q^n with covering
/// number at least min_tau, by exhaustive branch and bound. The certificate
/// carries every optimum of the final size (sorted) and the canonical least
/// one as witness; optimal = true means the search space was exhausted, so no
/// larger family exists.
inline SearchCertificate search_max_family(const SearchParams& params) {
    auto t0 = std::chrono::steady_clock::now();
    SearchCertificate cert;
    cert.params = params;
    if (params.target) fail(errc::range, "maximize form takes no target");
    if (params.min_tau > params.m) {
        // any member of an intersecting family is itself a cover
        cert.optimal = true;
        return cert;
    }
    detail::CliqueEngine eng = detail::build_engine(params);
    detail::run_engine(eng);
    cert.nodes = eng.nodes;
    cert.best_size = eng.best;
    for (const auto& cl : eng.optima) cert.optima.push_back(detail::clique_to_family(eng, cl));
    std::sort(cert.optima.begin(), cert.optima.end(),
              [](const Family& a, const Family& b) { return a < b; });
    if (!cert.optima.empty()) {
        cert.witness = cert.optima.front();
        cert.found = true;
    }
    cert.optimal = true;
    cert.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cert;
}

/// Decision form: find any intersecting family of size >= target with
/// covering number >= min_tau, or prove none exists. optimal = true only for
/// the exhaustive "none exists" outcome.
inline SearchCertificate search_family_exists(const SearchParams& params) {
    auto t0 = std::chrono::steady_clock::now();
    if (!params.target || *params.target < 1) fail(errc::range, "decision form requires target >= 1");
    SearchCertificate cert;
    cert.params = params;
    if (params.min_tau > params.m) {
        cert.optimal = true;
        return cert;
    }
    detail::CliqueEngine eng = detail::build_engine(params);
    detail::run_engine(eng);
    cert.nodes = eng.nodes;
    cert.found = eng.found;
    if (eng.found) {
        Family fam = detail::clique_to_family(eng, eng.found_clique);
        cert.best_size = fam.size();
        cert.witness = std::move(fam);
        cert.optimal = false; // stopped at the first hit
    } else {
        cert.optimal = true; // exhaustive refutation
    }
    cert.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cert;
}

} // namespace qcover
