#pragma once

#include <random>

#include "qcover/subspace.hpp"

namespace qcover {

inline constexpr std::uint64_t kDefaultSeed = 20240901;

inline std::vector<Elem> random_vector(const Field& f, int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> dist(0, f.q() - 1);
    std::vector<Elem> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = static_cast<Elem>(dist(rng));
    return v;
}

/// Random subspace of the prescribed dimension, by adjoining random vectors
/// until the span reaches it.
inline Subspace random_subspace(const FieldPtr& f, int ambient, int dim, std::mt19937_64& rng) {
    if (dim < 0 || dim > ambient) fail(errc::range, "random subspace dimension out of range");
    Subspace s = Subspace::zero(f, ambient);
    while (s.dim() < dim) {
        Subspace cand = join(s, Subspace::span(f, ambient, {random_vector(*f, ambient, rng)}));
        if (cand.dim() > s.dim()) s = std::move(cand);
    }
    return s;
}

/// Random extension of S inside the full space to the prescribed dimension.
inline Subspace random_extension(const Subspace& s, int dim, std::mt19937_64& rng) {
    Subspace out = s;
    while (out.dim() < dim) {
        Subspace cand =
            join(out, Subspace::span(out.field(), out.ambient(),
                                     {random_vector(out.f(), out.ambient(), rng)}));
        if (cand.dim() > out.dim()) out = std::move(cand);
    }
    return out;
}

struct SpacePair {
    Subspace a;
    Subspace b;
};

/// Random pair (A, B) with dim A = a, dim B = b and dim(A cap B) = c exactly:
/// grow random extensions of a shared random c-subspace and resample until
/// the intersection is not accidentally larger. Deterministic for a fixed
/// generator state.
inline SpacePair random_pair_with_meet(const FieldPtr& f, int ambient, int a, int b, int c,
                                       std::mt19937_64& rng) {
    if (!(0 <= c && c <= b && c <= a && a <= ambient && b <= ambient))
        fail(errc::range, "inconsistent pair dimensions");
    if (a + b - c > ambient)
        fail(errc::range, "ambient too small for the prescribed intersection");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Subspace core = random_subspace(f, ambient, c, rng);
        Subspace a_sub = random_extension(core, a, rng);
        Subspace b_sub = random_extension(core, b, rng);
        if (meet_dim(a_sub, b_sub) == c) return {std::move(a_sub), std::move(b_sub)};
    }
    throw std::logic_error("random pair sampling failed to hit the prescribed intersection");
}

} // namespace qcover
