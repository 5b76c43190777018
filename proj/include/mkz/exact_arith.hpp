#pragma once

// Exact integer/rational scalars, vectors and matrices, and the linear
// algebra kernels the rest of the library is built on. Everything here is
// exact: no floating point is used on any path.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mkz {

using Integer = mpz_class;
// mpq_class keeps values canonical (lowest terms, positive denominator)
// after every arithmetic operation; construct through make_rational() when
// starting from a raw numerator/denominator pair.
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define MKZ_DEFINE_ERROR(Name)                                                 \
    class Name : public Error {                                                \
    public:                                                                    \
        using Error::Error;                                                    \
    }

MKZ_DEFINE_ERROR(DependentRows);
MKZ_DEFINE_ERROR(Singular);
MKZ_DEFINE_ERROR(DimensionMismatch);
MKZ_DEFINE_ERROR(NotInSpan);
MKZ_DEFINE_ERROR(NotInLattice);
MKZ_DEFINE_ERROR(DependentTuple);
MKZ_DEFINE_ERROR(NotFullRank);
MKZ_DEFINE_ERROR(NotPrimitive);
MKZ_DEFINE_ERROR(WrongRank);
MKZ_DEFINE_ERROR(PreconditionViolated);
MKZ_DEFINE_ERROR(BudgetExceeded);
MKZ_DEFINE_ERROR(UnsupportedFieldOrder);
MKZ_DEFINE_ERROR(DegenerateHeights);
MKZ_DEFINE_ERROR(ConstructionMismatch);
MKZ_DEFINE_ERROR(ParseError);
MKZ_DEFINE_ERROR(UnknownConstruction);
MKZ_DEFINE_ERROR(BadParams);

#undef MKZ_DEFINE_ERROR

// ---------------------------------------------------------------------------
// Scalars

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Nearest integer, halves rounded up: floor(q + 1/2).
Integer round_nearest(const Rational& q);
Integer floor_rational(const Rational& q);
bool is_integral(const Rational& q);

// ---------------------------------------------------------------------------
// Vectors

RationalVector zero_vector(std::size_t n);
RationalVector unit_vector(std::size_t n, std::size_t i);
Rational dot(const RationalVector& a, const RationalVector& b);
Rational norm_sq(const RationalVector& a);
RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector sub(const RationalVector& a, const RationalVector& b);
RationalVector scale(const RationalVector& a, const Rational& s);
// a += s * b
void axpy(RationalVector& a, const Rational& s, const RationalVector& b);
bool is_zero(const RationalVector& a);
bool is_integral(const RationalVector& a);

RationalVector to_rational(const IntVector& v);
IntVector to_integer(const RationalVector& v); // throws if not integral

// Flips the sign so the first nonzero entry is positive.
RationalVector sign_normalized(RationalVector v);
// Lexicographic order on entries.
bool lex_less(const RationalVector& a, const RationalVector& b);

// x * M where x is a row vector and M has one row per entry of x.
RationalVector combine(const RationalVector& x, const RationalMatrix& rows);
RationalVector combine(const IntVector& x, const RationalMatrix& rows);

// ---------------------------------------------------------------------------
// Matrices

RationalMatrix identity_matrix(std::size_t n);
RationalMatrix transpose(const RationalMatrix& m);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix to_rational(const IntMatrix& m);
IntMatrix to_integer(const RationalMatrix& m);
IntMatrix int_identity(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

// Gram matrix of the rows.
RationalMatrix gram_matrix(const RationalMatrix& basis);

struct GSOData {
    RationalMatrix bstar;           // orthogonal vectors b*_i
    RationalMatrix mu;              // mu[i][j] for j < i, mu[i][i] = 1
    std::vector<Rational> norms_sq; // |b*_i|^2
};

// Exact Gram-Schmidt orthogonalization of the rows; throws DependentRows if
// the rows are linearly dependent.
GSOData gram_schmidt(const RationalMatrix& basis);

std::size_t rank(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);
Integer determinant(const IntMatrix& m);
RationalMatrix inverse(const RationalMatrix& m);

// Solves x * rows = v for x. The rows must be linearly independent; throws
// NotInSpan when v is outside their real span.
RationalVector solve_left(const RationalMatrix& rows, const RationalVector& v);

// Basis of {x : x * m = 0} (left kernel), one vector per row.
RationalMatrix left_kernel(const RationalMatrix& m);

struct HermiteResult {
    IntMatrix h; // row-style Hermite normal form, zero rows last
    IntMatrix u; // unimodular, h = u * m
};

// Row-style Hermite normal form: pivots positive, entries above each pivot
// reduced into [0, pivot).
HermiteResult hnf(const IntMatrix& m);

// Elementary divisors d_1 | d_2 | ... of m; min(rows, cols) entries, zeros
// (for rank deficiency) at the end.
IntVector snf_divisors(const IntMatrix& m);

Integer gcd_of(const IntVector& v);
Integer lcm_of_denominators(const RationalVector& v);

} // namespace mkz
