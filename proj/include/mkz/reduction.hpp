#pragma once

#include "mkz/enumeration.hpp"

#include <string>

namespace mkz {

enum class ReductionKind { Minkowski, KZ, LLL };

std::string to_string(ReductionKind kind);

/// One record per basis index: the chosen vector, its squared norm and how
/// many candidates tied with it under the selection criterion.
struct StepRecord {
    RationalVector vector;
    Rational norm_sq;
    std::size_t ties = 1;
};

struct ReductionResult {
    RationalMatrix basis;
    ReductionKind kind = ReductionKind::LLL;
    std::vector<StepRecord> steps;
    IntMatrix transform; // basis == transform * input basis, unimodular

    Rational max_norm_sq() const;
};

/// Exact rational LLL with Lovasz parameter 1/4 < delta < 1.
ReductionResult lll(const Lattice& lattice, const Rational& delta = make_rational(3, 4));

/// b_i is a shortest vector with (b_1, ..., b_i) primitive.
ReductionResult minkowski_reduce(const Lattice& lattice, const EnumOptions& opts = {});

/// Lattice vectors whose projection orthogonal to `prefix` is shortest and
/// whose full norm is smallest among those. Sign-normalized, canonical order.
struct KZStep {
    Rational projected_min_sq;
    Rational full_min_sq;
    RationalMatrix candidates;
};

KZStep kz_step(const Lattice& lattice, const RationalMatrix& prefix, const EnumOptions& opts = {});

/// b_i minimizes the projection orthogonal to b_1..b_{i-1} and, among the
/// minimizers, the full norm.
ReductionResult kz_reduce(const Lattice& lattice, const EnumOptions& opts = {});

struct ShortestBasisReport {
    RationalMatrix basis;
    Rational max_norm_sq;     // the squared primitive minimum bar-lambda_n^2
    bool certified = false;   // false when the search hit the pool/node cap
    Rational search_bound;    // all bases inside the pool below this were exhausted
    std::size_t pool_size = 0;
    std::uint64_t search_nodes = 0;
};

struct ShortestBasisOptions {
    EnumOptions enumeration;
    std::size_t pool_cap = 4000;
    std::uint64_t search_node_cap = 5'000'000;
};

ShortestBasisReport shortest_basis(const Lattice& lattice, const ShortestBasisOptions& opts = {});

struct DeltaTable {
    std::vector<Rational> values; // values[i] = Delta_{i+1}
    std::vector<bool> improved;   // entry set by the k = 6, 7 bounds
};

/// Delta_{k+1} = max{1, (Delta_1 + ... + Delta_k + 1) / 4}, Delta_1 = 1.
/// With improvements, Delta_6 = 6/4 and Delta_7 = 7/4 are substituted.
DeltaTable vdw_delta_table(std::size_t count, bool use_improvements);

} // namespace mkz
