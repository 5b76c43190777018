#pragma once

#include "mkz/lattice.hpp"

#include <array>
#include <string>
#include <vector>

namespace mkz {

Lattice hypercubic(std::size_t n);
/// D_n = {x in Z^n : sum of coordinates even}, n >= 2.
Lattice root_d(std::size_t n);
/// D_n^* = span_Z(e_1, ..., e_{n-1}, (e_1 + ... + e_n)/2), n >= 2.
Lattice dual_root_d(std::size_t n);

/// Parameters of the glued-prime lattice L_k. Indices are 0-based: block i
/// (1 <= i <= k) covers coordinates [dims[i-1], dims[i]).
struct GluedFamilyParams {
    std::size_t k = 0;
    std::vector<long> primes;      // p_1 = 2, p_2 = 3, ...
    std::vector<std::size_t> dims; // a_0 = 1, a_l = 1 + p_1^2 + ... + p_l^2

    std::size_t dimension() const { return dims.back(); }
    RationalVector block_vector(std::size_t i) const; // g_i
    RationalVector glue_vector(std::size_t i) const;  // (e_1 + g_i) / p_i
};

GluedFamilyParams glued_params(std::size_t k);

/// L_k = span_Z(e_1, ..., e_{a_k}, (e_1+g_1)/p_1, ..., (e_1+g_k)/p_k), given
/// by the basis {(e_1+g_i)/p_i} u {e_j : j not in {1, a_1, ..., a_{k-1}}}.
Lattice glued_prime_lattice(std::size_t k);

/// The 12-dimensional variant with second glue vector (e_1+e_4+...+e_12)/3.
Lattice l2_small();

struct GluedResidues {
    std::vector<long> x; // x_i in [0, p_i)
};

/// Residues x_i(w) with w - sum_i (x_i/p_i)(e_1 + g_i) integral.
GluedResidues glued_residues(std::size_t k, const RationalVector& w);

/// Points of P^2(F_q), q in {2, 4}, as coordinate triples. F_4 elements are
/// encoded 0, 1, 2 = w, 3 = w + 1 with w^2 = w + 1. Points are normalized so
/// the last nonzero coordinate is 1 and listed in the order
///   (a, b, 1) for (a, b) in F x F, then (a, 1, 0) for a in F, then (1, 0, 0),
/// where F is iterated as 0, 1 for q = 2 and 0, w, w+1, 1 for q = 4 (powers
/// of the generator). Line i is the set of points orthogonal to point i.
struct IncidenceStructure {
    int q = 0;
    std::vector<std::array<int, 3>> points;
    std::vector<std::vector<std::size_t>> lines; // sorted point indices

    std::string point_label(std::size_t i) const;
};

IncidenceStructure projective_plane_lines(int q);

/// Lattice given by 0/1 generator vectors with prescribed supports.
struct GeneratedLattice {
    Lattice lattice;
    RationalMatrix generators;
    std::vector<std::vector<std::size_t>> supports;
};

GeneratedLattice from_supports(std::size_t dim, const std::vector<std::vector<std::size_t>>& supports);

/// The 7 line vectors of P^2(F_2) in R^7.
GeneratedLattice l_proj();

/// 21 line triplets over three copies of P^2(F_2) (copy-major order) plus the
/// triplet {0, 7, 14}.
GeneratedLattice attempt21();

/// 42 line quintuplets over two copies of P^2(F_4), interleaved (line i of
/// copy 1, line i of copy 2, ...), plus the quintuplet {0, 1, 4, 21, 22}.
GeneratedLattice lattice42();
std::vector<std::vector<std::size_t>> lattice42_supports();

struct PerturbedLift {
    Lattice lattice;
    RationalMatrix lifted;        // w_i + eps_i e_n
    DependenceRelation relation;  // sum a_i w_i = 0
    Rational height_sum;          // sum a_i eps_i
    RationalVector shortest;      // (sum a_i eps_i) e_n
};

/// Lifts n generators of a rank n-1 lattice in R^{n-1} to R^n with heights.
/// Throws DegenerateHeights when sum a_i eps_i = 0.
PerturbedLift perturbed_lift(const Lattice& base, const RationalMatrix& generators,
                             const std::vector<Rational>& heights);

/// eps_i = 1 / (scale * q_i), q_i the i-th prime.
std::vector<Rational> default_heights(std::size_t n, long scale = 10'000);

/// The 43-dimensional lift of lattice42 with default heights.
PerturbedLift perturbed43(long scale = 10'000);

std::vector<long> first_primes(std::size_t count);

} // namespace mkz
