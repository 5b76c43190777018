#include "mkz/constructions.hpp"

#include <algorithm>

namespace mkz {

std::vector<long> first_primes(std::size_t count) {
    std::vector<long> out;
    for (long c = 2; out.size() < count; ++c) {
        bool prime = true;
        for (long p : out) {
            if (p * p > c)
                break;
            if (c % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime)
            out.push_back(c);
    }
    return out;
}

Lattice hypercubic(std::size_t n) {
    if (n == 0)
        throw BadParams("Z^n needs n >= 1");
    return Lattice(identity_matrix(n));
}

Lattice root_d(std::size_t n) {
    if (n < 2)
        throw BadParams("D_n needs n >= 2");
    RationalMatrix b;
    RationalVector first = zero_vector(n);
    first[0] = 1;
    first[1] = 1;
    b.push_back(first);
    for (std::size_t i = 1; i < n; ++i) {
        RationalVector v = zero_vector(n);
        v[i] = 1;
        v[i - 1] = -1;
        b.push_back(v);
    }
    return Lattice(std::move(b));
}

Lattice dual_root_d(std::size_t n) {
    if (n < 2)
        throw BadParams("D_n^* needs n >= 2");
    RationalMatrix b;
    for (std::size_t i = 0; i + 1 < n; ++i)
        b.push_back(unit_vector(n, i));
    b.push_back(RationalVector(n, make_rational(1, 2)));
    return Lattice(std::move(b));
}

RationalVector GluedFamilyParams::block_vector(std::size_t i) const {
    RationalVector g = zero_vector(dimension());
    for (std::size_t j = dims.at(i - 1); j < dims.at(i); ++j)
        g[j] = 1;
    return g;
}

RationalVector GluedFamilyParams::glue_vector(std::size_t i) const {
    RationalVector g = block_vector(i);
    g[0] = 1;
    return scale(g, make_rational(1, primes.at(i - 1)));
}

GluedFamilyParams glued_params(std::size_t k) {
    if (k == 0)
        throw BadParams("glued lattice needs k >= 1");
    GluedFamilyParams p;
    p.k = k;
    p.primes = first_primes(k);
    p.dims.push_back(1);
    for (long q : p.primes)
        p.dims.push_back(p.dims.back() + static_cast<std::size_t>(q * q));
    return p;
}

Lattice glued_prime_lattice(std::size_t k) {
    const auto p = glued_params(k);
    const std::size_t d = p.dimension();
    // e_1 and the last coordinate of every block but the last are replaced
    // by the glue vectors (1-based indices 1, a_1, ..., a_{k-1}).
    std::vector<bool> skip(d, false);
    skip[0] = true;
    for (std::size_t i = 1; i < k; ++i)
        skip[p.dims[i] - 1] = true;
    RationalMatrix b;
    for (std::size_t j = 0; j < d; ++j)
        if (!skip[j])
            b.push_back(unit_vector(d, j));
    for (std::size_t i = 1; i <= k; ++i)
        b.push_back(p.glue_vector(i));
    return Lattice(std::move(b));
}

Lattice l2_small() {
    const std::size_t d = 12;
    RationalMatrix gens = identity_matrix(d);
    RationalVector g1 = zero_vector(d);
    for (std::size_t j = 0; j < 5; ++j)
        g1[j] = make_rational(1, 2);
    RationalVector g2 = zero_vector(d);
    g2[0] = make_rational(1, 3);
    for (std::size_t j = 3; j < 12; ++j)
        g2[j] = make_rational(1, 3);
    gens.push_back(g1);
    gens.push_back(g2);
    return Lattice::from_generators(gens);
}

GluedResidues glued_residues(std::size_t k, const RationalVector& w) {
    const auto p = glued_params(k);
    if (w.size() != p.dimension())
        throw DimensionMismatch("glued_residues: wrong vector length");
    if (!contains(glued_prime_lattice(k), w))
        throw NotInLattice("glued_residues: vector is not in L_k");
    GluedResidues r;
    for (std::size_t i = 1; i <= k; ++i) {
        const Rational& c = w[p.dims[i - 1]];
        const Rational frac = c - Rational(floor_rational(c));
        const Rational x = frac * p.primes[i - 1];
        r.x.push_back(x.get_num().get_si());
    }
    return r;
}

namespace {

int f4_mul(int a, int b) {
    // polynomials over F_2 modulo w^2 + w + 1
    int r = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (((a >> i) & 1) && ((b >> j) & 1))
                r ^= 1 << (i + j);
    if (r & 4)
        r ^= 4 | 2 | 1;
    return r;
}

int field_mul(int q, int a, int b) { return q == 2 ? (a & b) : f4_mul(a, b); }

} // namespace

std::string IncidenceStructure::point_label(std::size_t i) const {
    auto elem = [&](int e) -> std::string {
        switch (e) {
        case 0:
            return "0";
        case 1:
            return "1";
        case 2:
            return "w";
        default:
            return "w+1";
        }
    };
    const auto& pt = points.at(i);
    return "(" + elem(pt[0]) + ":" + elem(pt[1]) + ":" + elem(pt[2]) + ")";
}

IncidenceStructure projective_plane_lines(int q) {
    if (q != 2 && q != 4)
        throw UnsupportedFieldOrder("only q = 2 and q = 4 are supported");
    const std::vector<int> field = q == 2 ? std::vector<int>{0, 1} : std::vector<int>{0, 2, 3, 1};
    IncidenceStructure s;
    s.q = q;
    for (int a : field)
        for (int b : field)
            s.points.push_back({a, b, 1});
    for (int a : field)
        s.points.push_back({a, 1, 0});
    s.points.push_back({1, 0, 0});

    for (const auto& pi : s.points) {
        std::vector<std::size_t> line;
        for (std::size_t j = 0; j < s.points.size(); ++j) {
            const auto& pj = s.points[j];
            const int ip = field_mul(q, pi[0], pj[0]) ^ field_mul(q, pi[1], pj[1]) ^
                           field_mul(q, pi[2], pj[2]);
            if (ip == 0)
                line.push_back(j);
        }
        s.lines.push_back(std::move(line));
    }
    return s;
}

GeneratedLattice from_supports(std::size_t dim,
                               const std::vector<std::vector<std::size_t>>& supports) {
    RationalMatrix gens;
    for (const auto& s : supports) {
        RationalVector v = zero_vector(dim);
        for (auto i : s)
            v.at(i) = 1;
        gens.push_back(std::move(v));
    }
    Lattice lat = Lattice::from_generators(gens);
    return GeneratedLattice{std::move(lat), std::move(gens), supports};
}

GeneratedLattice l_proj() {
    return from_supports(7, projective_plane_lines(2).lines);
}

GeneratedLattice attempt21() {
    const auto plane = projective_plane_lines(2);
    std::vector<std::vector<std::size_t>> supports;
    for (std::size_t copy = 0; copy < 3; ++copy)
        for (const auto& line : plane.lines) {
            std::vector<std::size_t> s;
            for (auto p : line)
                s.push_back(p + 7 * copy);
            supports.push_back(std::move(s));
        }
    supports.push_back({0, 7, 14});
    return from_supports(21, supports);
}

std::vector<std::vector<std::size_t>> lattice42_supports() {
    const auto plane = projective_plane_lines(4);
    std::vector<std::vector<std::size_t>> supports;
    for (const auto& line : plane.lines) {
        supports.push_back(line);
        std::vector<std::size_t> second;
        for (auto p : line)
            second.push_back(p + 21);
        supports.push_back(std::move(second));
    }
    supports.push_back({0, 1, 4, 21, 22});
    return supports;
}

GeneratedLattice lattice42() { return from_supports(42, lattice42_supports()); }

PerturbedLift perturbed_lift(const Lattice& base, const RationalMatrix& generators,
                             const std::vector<Rational>& heights) {
    const std::size_t n = generators.size();
    if (!base.is_full_rank() || base.rank() + 1 != n)
        throw PreconditionViolated("perturbed_lift: need n generators of a full-rank rank n-1 lattice");
    if (heights.size() != n)
        throw PreconditionViolated("perturbed_lift: one height per generator");
    for (const auto& h : heights)
        if (sgn(h) == 0)
            throw PreconditionViolated("perturbed_lift: heights must be nonzero");
    for (const auto& g : generators)
        if (g.size() != base.ambient_dim())
            throw DimensionMismatch("perturbed_lift: generator length mismatch");
    if (!same_lattice(Lattice::from_generators(generators), base))
        throw PreconditionViolated("perturbed_lift: generators do not span the lattice");

    DependenceRelation rel = linear_dependence(generators);
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i)
        s += Rational(rel.coefficients[i]) * heights[i];
    if (sgn(s) == 0)
        throw DegenerateHeights("sum of a_i eps_i vanishes");

    RationalMatrix lifted;
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector v = generators[i];
        v.push_back(heights[i]);
        lifted.push_back(std::move(v));
    }
    RationalVector shortest = zero_vector(n);
    shortest[n - 1] = s;
    Lattice lat(lifted);
    return PerturbedLift{std::move(lat), std::move(lifted), std::move(rel), s, std::move(shortest)};
}

std::vector<Rational> default_heights(std::size_t n, long scale) {
    if (scale <= 0)
        throw BadParams("height scale must be positive");
    std::vector<Rational> h;
    for (long q : first_primes(n))
        h.push_back(Rational(1) / (Integer(scale) * q));
    return h;
}

PerturbedLift perturbed43(long scale) {
    const auto g = lattice42();
    return perturbed_lift(g.lattice, g.generators, default_heights(g.generators.size(), scale));
}

} // namespace mkz
