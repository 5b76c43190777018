#pragma once

#include "mkz/exact_arith.hpp"

#include <vector>

namespace mkz {

/// A lattice given by an ordered basis of linearly independent rational rows.
/// Immutable after construction.
class Lattice {
public:
    /// Throws DependentRows if the rows are not linearly independent and
    /// DimensionMismatch if they are ragged or empty.
    explicit Lattice(RationalMatrix basis);

    /// Lattice generated by arbitrary (possibly dependent) rational vectors.
    static Lattice from_generators(const RationalMatrix& generators);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t rank() const { return basis_.size(); }
    const RationalMatrix& basis() const { return basis_; }
    bool is_full_rank() const { return rank() == ambient_dim(); }

private:
    std::size_t ambient_dim_ = 0;
    RationalMatrix basis_;
};

/// Coprime integer coefficients of the unique linear dependence among n
/// vectors spanning an (n-1)-dimensional space. First nonzero entry positive.
struct DependenceRelation {
    IntVector coefficients;
};

struct PrimitivityCertificate {
    bool verdict = false;
    IntVector divisors; // elementary divisors of the integer coordinate matrix
};

bool contains(const Lattice& lattice, const RationalVector& v);

/// Unique x with x * basis = v; throws NotInSpan.
RationalVector coordinates(const Lattice& lattice, const RationalVector& v);

/// Integer coordinates; throws NotInLattice if v is not a lattice vector.
IntVector integer_coordinates(const Lattice& lattice, const RationalVector& v);

PrimitivityCertificate is_primitive_tuple(const Lattice& lattice,
                                          const RationalMatrix& tuple);

/// Primitivity from integer coordinates (rows) w.r.t. the lattice basis.
/// Returns false instead of throwing on dependent rows.
bool coordinates_primitive(const IntMatrix& coords);

Rational covolume_squared(const Lattice& lattice);

/// Dual lattice of a full-rank lattice: basis (B^-1)^T.
Lattice dual(const Lattice& lattice);

/// Unimodular completion of integer coordinate rows of a primitive tuple:
/// returns an n x n unimodular matrix whose first rows are `coords`.
IntMatrix complete_unimodular(const IntMatrix& coords);

/// Basis of the lattice whose first vectors are the given primitive tuple.
RationalMatrix complete_to_basis(const Lattice& lattice, const RationalMatrix& tuple);

/// Orthogonal projection of v onto span(rows)^perp.
RationalVector project_away(const RationalMatrix& rows, const RationalVector& v);

struct ProjectedLattice {
    Lattice lattice;            // projections of the completion vectors
    RationalMatrix completion;  // the lattice vectors they are projections of
};

/// Lattice of projections of L onto span(prefix)^perp; prefix must be primitive.
Lattice project_orthogonal(const Lattice& lattice, const RationalMatrix& prefix);
ProjectedLattice project_orthogonal_with_lifts(const Lattice& lattice,
                                               const RationalMatrix& prefix);

DependenceRelation linear_dependence(const RationalMatrix& vectors);

/// True when both bases generate the same lattice.
bool same_lattice(const Lattice& a, const Lattice& b);

/// True when the vectors form a basis of the lattice.
bool is_basis_of(const Lattice& lattice, const RationalMatrix& vectors);

/// Constructive basis extension: given a primitive tuple
/// `sub` and a lattice vector y0 outside its span with |y0|^2 <=
/// lambda_next_sq, returns y with (sub, y) primitive and
///   |y|^2 <= max{lambda_next_sq, (sum_i |b*_i|^2 + lambda_next_sq) / 4},
/// where b*_i is the Gram-Schmidt orthogonalization of `sub`.
RationalVector primitive_completion(const Lattice& lattice, const RationalMatrix& sub,
                                    const RationalVector& y0,
                                    const Rational& lambda_next_sq);

/// The right-hand side of the bound above.
Rational primitive_completion_bound(const RationalMatrix& sub, const Rational& lambda_next_sq);

} // namespace mkz
