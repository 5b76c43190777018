#pragma once

#include "mkz/constructions.hpp"
#include "mkz/reduction.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mkz {

/// True iff no coefficient of the relation is +1 or -1.
bool check_no_unit_coefficient(const DependenceRelation& rel);

/// True iff v_coords + j * relation_shift is integral for some 0 <= j < max_k.
bool integer_relation_membership(const RationalVector& v_coords,
                                 const RationalVector& relation_shift,
                                 const Integer& max_k);

/// Membership data for the lattice spanned by n generators of an
/// (n-1)-dimensional space: M = generators 2..n, shift = (a_2..a_n) / a_1.
struct GeneratorSystem {
    DependenceRelation relation;
    RationalMatrix m_inverse;
    RationalVector shift;
    Integer max_k; // |a_1|
};

/// Throws ConstructionMismatch if some generator has coefficient 0 in the relation.
GeneratorSystem generator_system(const RationalMatrix& generators);

bool in_generated_lattice(const GeneratorSystem& sys, const RationalVector& v);

struct FamilyCount {
    std::string family;
    std::uint64_t checked = 0;
};

struct AppendixReport {
    std::string lattice_id;
    DependenceRelation relation;
    bool no_unit_coefficient = false;
    std::vector<FamilyCount> families_checked;
    RationalMatrix violations;
    std::string exhaustiveness;
    double elapsed_ms = 0;

    bool success() const { return no_unit_coefficient && violations.empty(); }
};

/// Scans every vector of norm below `weight` that can lie in the lattice of
/// 0/1 weight-`weight` generators (weight 3 or 5), plus the weight-`weight`
/// 0/1 vectors other than the generators. The lattice sits inside
/// {x : sum x_i = 0 mod weight}, which makes the families exhaustive.
AppendixReport check_generator_family(const GeneratedLattice& g, std::size_t weight,
                                      unsigned workers = 1, const std::string& id = "");

AppendixReport check_shortest_vectors_42(unsigned workers = 1);
AppendixReport check_attempt21(unsigned workers = 1);

struct DifferenceMinimum {
    Rational min_sq;
    RationalVector witness;
};

/// Minimum of |w|^2 over the nonzero vectors of
/// span_Z(m e_i - (e_1 + ... + e_m)), which is m^2 - m, with its witness.
DifferenceMinimum difference_lattice_min(long m);

struct Verdict {
    std::string claim;
    std::string lhs;      // quantity key
    std::string relation; // one of < <= = >= >
    std::string rhs;      // quantity key
    bool holds = false;
};

struct Check {
    std::string name;
    bool holds = false;
};

/// Exact quantities plus verdicts comparing them. Verdicts only refer to
/// stored quantities, so recheck() recomputes them from the stored values.
struct TheoremReport {
    std::string lattice_id;
    std::string claim;
    std::vector<std::pair<std::string, Rational>> quantities;
    std::vector<Verdict> verdicts;
    std::vector<Check> checks;
    std::vector<Check> flags; // informational, do not affect passed()
    std::vector<std::pair<std::string, RationalMatrix>> witnesses;
    double elapsed_ms = 0;

    void set(const std::string& key, const Rational& value);
    const Rational& get(const std::string& key) const;
    bool has(const std::string& key) const;
    void compare(const std::string& claim, const std::string& lhs, const std::string& relation,
                 const std::string& rhs);
    void check(const std::string& name, bool holds);
    void flag(const std::string& name, bool value);

    bool passed() const;
    bool recheck() const;
};

bool compare_rationals(const Rational& a, const std::string& relation, const Rational& b);

/// Block-structured KZ basis of L_k: per block, unit, (unit,) glue, units.
RationalMatrix structured_kz_basis(std::size_t k);

/// Certifies the structured KZ basis through the reduction to
/// difference lattices; for k <= 2 also against generic KZ steps.
TheoremReport verify_kz_structure(std::size_t k, const EnumOptions& opts = {});

/// Minimum of |w|^2 over w in L_k with residues x (exact, residue-class bound).
Rational residue_class_minimum(std::size_t k, const std::vector<long>& x);

/// Minkowski last vector versus primitive minimum on L_k.
TheoremReport verify_theorem_gap(std::size_t k, const EnumOptions& opts = {});

/// True iff the Gram matrices agree up to a positive scale and a signed
/// permutation of the basis vectors.
bool gram_similar(const RationalMatrix& gram_a, const RationalMatrix& gram_b);

/// Minkowski versus successive minima bounds for every index.
TheoremReport verify_minkowski_bounds(const Lattice& lattice, const std::string& id = "",
                                      const EnumOptions& opts = {});

/// The 43-dimensional lift: shortest vector and replacement argument.
TheoremReport verify_perturbed_lift(const PerturbedLift& lift, const AppendixReport& base_check);

TheoremReport verify_delta_table(std::size_t count);

} // namespace mkz
