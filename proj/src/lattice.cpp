#include "mkz/lattice.hpp"

#include "mkz/enumeration.hpp"

#include <algorithm>

namespace mkz {

Lattice::Lattice(RationalMatrix basis) : basis_(std::move(basis)) {
    if (basis_.empty())
        throw DimensionMismatch("lattice needs at least one basis vector");
    ambient_dim_ = basis_[0].size();
    if (ambient_dim_ == 0)
        throw DimensionMismatch("lattice vectors must be nonempty");
    for (const auto& row : basis_)
        if (row.size() != ambient_dim_)
            throw DimensionMismatch("ragged lattice basis");
    if (mkz::rank(basis_) != basis_.size())
        throw DependentRows("lattice basis rows are linearly dependent");
}

Lattice Lattice::from_generators(const RationalMatrix& generators) {
    if (generators.empty())
        throw DimensionMismatch("no generators");
    Integer den = 1;
    for (const auto& g : generators) {
        const Integer l = lcm_of_denominators(g);
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l.get_mpz_t());
    }
    IntMatrix scaled;
    scaled.reserve(generators.size());
    for (const auto& g : generators)
        scaled.push_back(to_integer(scale(g, Rational(den))));
    const auto h = hnf(scaled).h;
    RationalMatrix basis;
    for (const auto& row : h) {
        RationalVector r = to_rational(row);
        if (is_zero(r))
            continue;
        basis.push_back(scale(r, Rational(1) / den));
    }
    return Lattice(std::move(basis));
}

RationalVector coordinates(const Lattice& lattice, const RationalVector& v) {
    if (v.size() != lattice.ambient_dim())
        throw DimensionMismatch("vector length differs from ambient dimension");
    return solve_left(lattice.basis(), v);
}

IntVector integer_coordinates(const Lattice& lattice, const RationalVector& v) {
    RationalVector x;
    try {
        x = coordinates(lattice, v);
    } catch (const NotInSpan&) {
        throw NotInLattice("vector is outside the span of the lattice");
    }
    return to_integer(x);
}

bool contains(const Lattice& lattice, const RationalVector& v) {
    if (v.size() != lattice.ambient_dim())
        throw DimensionMismatch("vector length differs from ambient dimension");
    try {
        return is_integral(solve_left(lattice.basis(), v));
    } catch (const NotInSpan&) {
        return false;
    }
}

bool coordinates_primitive(const IntMatrix& coords) {
    if (coords.empty())
        return true;
    const auto d = snf_divisors(coords);
    if (d.size() < coords.size())
        return false;
    return std::all_of(d.begin(), d.end(), [](const Integer& x) { return x == 1; });
}

PrimitivityCertificate is_primitive_tuple(const Lattice& lattice, const RationalMatrix& tuple) {
    IntMatrix coords;
    coords.reserve(tuple.size());
    for (const auto& v : tuple)
        coords.push_back(integer_coordinates(lattice, v));
    if (!tuple.empty() && mkz::rank(tuple) != tuple.size())
        throw DependentTuple("tuple is linearly dependent");
    PrimitivityCertificate cert;
    cert.divisors = snf_divisors(coords);
    cert.verdict = std::all_of(cert.divisors.begin(), cert.divisors.end(),
                               [](const Integer& x) { return x == 1; });
    return cert;
}

Rational covolume_squared(const Lattice& lattice) {
    return determinant(gram_matrix(lattice.basis()));
}

Lattice dual(const Lattice& lattice) {
    if (!lattice.is_full_rank())
        throw NotFullRank("dual is only provided for full-rank lattices");
    return Lattice(transpose(inverse(lattice.basis())));
}

IntMatrix complete_unimodular(const IntMatrix& coords) {
    if (coords.empty())
        throw DimensionMismatch("complete_unimodular: empty tuple");
    const std::size_t k = coords.size();
    const std::size_t n = coords[0].size();
    IntMatrix ct(n, IntVector(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j)
            ct[j][i] = coords[i][j];
    // u * C^T = [I; 0] for a primitive tuple, so C = first rows of (u^-1)^T.
    const auto res = hnf(ct);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (res.h[i][j] != (i == j ? 1 : 0))
                throw NotPrimitive("tuple is not primitive");
    const RationalMatrix vt = transpose(inverse(to_rational(res.u)));
    return to_integer(vt);
}

RationalMatrix complete_to_basis(const Lattice& lattice, const RationalMatrix& tuple) {
    if (tuple.empty())
        return lattice.basis();
    IntMatrix coords;
    for (const auto& v : tuple)
        coords.push_back(integer_coordinates(lattice, v));
    const IntMatrix full = complete_unimodular(coords);
    RationalMatrix out = tuple;
    for (std::size_t i = tuple.size(); i < full.size(); ++i)
        out.push_back(combine(full[i], lattice.basis()));
    return out;
}

RationalVector project_away(const RationalMatrix& rows, const RationalVector& v) {
    if (rows.empty())
        return v;
    const auto g = gram_schmidt(rows);
    RationalVector r = v;
    for (std::size_t j = 0; j < rows.size(); ++j)
        axpy(r, -(dot(v, g.bstar[j]) / g.norms_sq[j]), g.bstar[j]);
    return r;
}

ProjectedLattice project_orthogonal_with_lifts(const Lattice& lattice,
                                               const RationalMatrix& prefix) {
    if (prefix.size() >= lattice.rank())
        throw PreconditionViolated("prefix must be shorter than the lattice rank");
    RationalMatrix full;
    try {
        full = complete_to_basis(lattice, prefix);
    } catch (const NotPrimitive&) {
        throw NotPrimitive("project_orthogonal: prefix is not primitive");
    }
    RationalMatrix completion(full.begin() + static_cast<std::ptrdiff_t>(prefix.size()),
                              full.end());
    RationalMatrix projected;
    if (prefix.empty()) {
        projected = completion;
    } else {
        const auto g = gram_schmidt(prefix);
        for (const auto& c : completion) {
            RationalVector r = c;
            for (std::size_t j = 0; j < prefix.size(); ++j)
                axpy(r, -(dot(c, g.bstar[j]) / g.norms_sq[j]), g.bstar[j]);
            projected.push_back(std::move(r));
        }
    }
    return ProjectedLattice{Lattice(std::move(projected)), std::move(completion)};
}

Lattice project_orthogonal(const Lattice& lattice, const RationalMatrix& prefix) {
    return project_orthogonal_with_lifts(lattice, prefix).lattice;
}

DependenceRelation linear_dependence(const RationalMatrix& vectors) {
    const auto kernel = left_kernel(vectors);
    if (kernel.size() != 1)
        throw WrongRank("expected a one-dimensional dependence space, found dimension " +
                        std::to_string(kernel.size()));
    const Integer den = lcm_of_denominators(kernel[0]);
    IntVector a = to_integer(scale(kernel[0], Rational(den)));
    const Integer g = gcd_of(a);
    for (auto& x : a)
        x /= g;
    const auto first = std::find_if(a.begin(), a.end(), [](const Integer& x) { return x != 0; });
    if (first != a.end() && *first < 0)
        for (auto& x : a)
            x = -x;
    return DependenceRelation{std::move(a)};
}

bool same_lattice(const Lattice& a, const Lattice& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.rank() != b.rank())
        return false;
    for (const auto& v : b.basis())
        if (!contains(a, v))
            return false;
    for (const auto& v : a.basis())
        if (!contains(b, v))
            return false;
    return true;
}

bool is_basis_of(const Lattice& lattice, const RationalMatrix& vectors) {
    if (vectors.size() != lattice.rank())
        return false;
    IntMatrix coords;
    for (const auto& v : vectors) {
        if (v.size() != lattice.ambient_dim() || !contains(lattice, v))
            return false;
        coords.push_back(integer_coordinates(lattice, v));
    }
    const Integer d = determinant(coords);
    return d == 1 || d == -1;
}

Rational primitive_completion_bound(const RationalMatrix& sub, const Rational& lambda_next_sq) {
    Rational sum = 0;
    if (!sub.empty())
        for (const auto& b : gram_schmidt(sub).norms_sq)
            sum += b;
    const Rational avg = (sum + lambda_next_sq) / 4;
    return std::max(lambda_next_sq, avg);
}

RationalVector primitive_completion(const Lattice& lattice, const RationalMatrix& sub,
                                    const RationalVector& y0,
                                    const Rational& lambda_next_sq) {
    if (sub.empty() || sub.size() >= lattice.rank())
        throw PreconditionViolated("need 1 <= |sub| < rank");
    if (y0.size() != lattice.ambient_dim() || !contains(lattice, y0))
        throw PreconditionViolated("y0 must be a lattice vector");
    if (norm_sq(y0) > lambda_next_sq)
        throw PreconditionViolated("|y0|^2 exceeds lambda_next_sq");
    RationalMatrix with_y0 = sub;
    with_y0.push_back(y0);
    if (mkz::rank(with_y0) != with_y0.size())
        throw PreconditionViolated("y0 lies in the span of sub");
    PrimitivityCertificate sub_cert;
    try {
        sub_cert = is_primitive_tuple(lattice, sub);
    } catch (const Error& e) {
        throw PreconditionViolated(std::string("sub: ") + e.what());
    }
    if (!sub_cert.verdict)
        throw PreconditionViolated("sub is not a primitive tuple");

    if (is_primitive_tuple(lattice, with_y0).verdict)
        return y0;

    // A vector whose projection is a shortest nonzero vector of the projected
    // lattice extends `sub` to a primitive tuple.
    const auto proj = project_orthogonal_with_lifts(lattice, sub);
    const auto sv = shortest_vector(proj.lattice);
    const IntVector t = integer_coordinates(proj.lattice, sv.vector);
    RationalVector y = combine(t, proj.completion);

    // Size-reduce against y_k, ..., y_1 so each Gram-Schmidt coordinate is
    // at most half of the corresponding |b*_i|.
    const auto g = gram_schmidt(sub);
    for (std::size_t i = sub.size(); i-- > 0;) {
        const Rational c = dot(y, g.bstar[i]) / g.norms_sq[i];
        const Integer q = round_nearest(c);
        if (q != 0)
            axpy(y, Rational(-q), sub[i]);
    }

    const Rational bound = primitive_completion_bound(sub, lambda_next_sq);
    if (norm_sq(y) > bound)
        throw Error("primitive_completion: bound violated (internal error)");
    return y;
}

} // namespace mkz
