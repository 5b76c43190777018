#pragma once

#include "mkz/lattice.hpp"

#include <cstdint>

namespace mkz {

struct EnumOptions {
    std::uint64_t node_budget = 100'000'000; // BudgetExceeded past this
    unsigned workers = 1;                    // top-level subtrees split across threads
};

/// All nonzero lattice vectors up to a squared-norm bound, one per +/- pair.
/// Sorted by (norm, lexicographic order of the sign-normalized vector).
struct VectorList {
    RationalMatrix vectors;          // sign-normalized: first nonzero entry positive
    IntMatrix coords;                // integer coordinates w.r.t. the lattice basis
    std::vector<Rational> norms_sq;
    Rational bound_sq;

    std::size_t size() const { return vectors.size(); }
};

struct ShortestVector {
    RationalVector vector;
    Rational norm_sq;
};

struct MinimaReport {
    std::vector<Rational> minima_sq; // lambda_1^2 <= ... <= lambda_n^2
    RationalMatrix witnesses;        // |witnesses[i]|^2 == minima_sq[i]
};

ShortestVector shortest_vector(const Lattice& lattice, const EnumOptions& opts = {});

VectorList enumerate_up_to(const Lattice& lattice, const Rational& bound_sq,
                           const EnumOptions& opts = {});

/// Closest lattice vector to a target in the real span of the lattice; ties
/// go to the lexicographically smallest vector.
RationalVector closest_vector(const Lattice& lattice, const RationalVector& target,
                              const EnumOptions& opts = {});

/// Every lattice vector at minimal distance from the target, lexicographically sorted.
RationalMatrix closest_vectors_all(const Lattice& lattice, const RationalVector& target,
                                   const EnumOptions& opts = {});

MinimaReport successive_minima(const Lattice& lattice, const EnumOptions& opts = {});

/// Strict weak order used for every deterministic tie-break: squared norm
/// first, then lexicographic order of the sign-normalized vector.
bool canonical_less(const RationalVector& a, const RationalVector& b);

} // namespace mkz
