#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mkz/constructions.hpp"
#include "mkz/enumeration.hpp"
#include "mkz/reduction.hpp"
#include "oracles.hpp"

using namespace mkz;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

void check_transform(const ReductionResult& r, const RationalMatrix& input) {
    CHECK(abs(determinant(r.transform)) == 1);
    CHECK(multiply(to_rational(r.transform), input) == r.basis);
}

Rational max_row(const RationalMatrix& b) {
    Rational m = 0;
    for (const auto& r : b)
        m = std::max<Rational>(m, norm_sq(r));
    return m;
}

RationalMatrix well_conditioned(std::mt19937_64& rng, std::size_t n, long range) {
    for (;;) {
        auto b = oracle::random_basis(rng, n, n, -range, range);
        if (oracle::box_points(b, max_row(b)) < 3'000'000)
            return b;
    }
}

// Smallest max-norm over all bases drawn from a complete pool (n <= 3).
Rational brute_shortest_basis(const RationalMatrix& b, const std::set<RationalVector>& pool) {
    std::vector<RationalVector> vs(pool.begin(), pool.end());
    const RationalMatrix inv = inverse(b);
    std::vector<IntVector> coords;
    for (const auto& v : vs)
        coords.push_back(to_integer(combine(v, inv)));
    const std::size_t n = b.size();
    Rational best = -1;
    std::vector<std::size_t> idx(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t d, std::size_t from) {
        if (d == n) {
            IntMatrix m;
            Rational mx = 0;
            for (auto i : idx) {
                m.push_back(coords[i]);
                mx = std::max<Rational>(mx, norm_sq(vs[i]));
            }
            if (abs(determinant(m)) == 1 && (best < 0 || mx < best))
                best = mx;
            return;
        }
        for (std::size_t i = from; i < vs.size(); ++i) {
            idx[d] = i;
            rec(d + 1, i + 1);
        }
    };
    rec(0, 0);
    return best;
}

} // namespace

TEST_CASE("lll output is size reduced and satisfies the exchange condition") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + t % 7;
        const auto b = oracle::random_basis(rng, n, n + t % 2, -20, 20);
        const auto r = lll(Lattice(b));
        check_transform(r, b);
        const auto g = gram_schmidt(r.basis);
        for (std::size_t i = 1; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j)
                CHECK(abs(g.mu[i][j]) <= q(1, 2));
            CHECK(g.norms_sq[i] >= (q(3, 4) - g.mu[i][i - 1] * g.mu[i][i - 1]) * g.norms_sq[i - 1]);
        }
    }
    CHECK_THROWS_AS(lll(hypercubic(3), q(1, 4)), PreconditionViolated);
}

TEST_CASE("minkowski reduction matches the greedy oracle") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + t % 3;
        const auto b = well_conditioned(rng, n, 4);
        const auto r = minkowski_reduce(Lattice(b));
        check_transform(r, b);
        REQUIRE(r.steps.size() == n);
        const auto pool = oracle::brute_vectors_up_to(b, r.max_norm_sq());
        const auto expected = oracle::greedy_minkowski_norms(b, pool);
        std::vector<Rational> got;
        for (const auto& row : r.basis)
            got.push_back(norm_sq(row));
        CHECK(got == expected);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(r.steps[i].norm_sq == got[i]);
        CHECK(std::is_sorted(got.begin(), got.end()));
    }
}

TEST_CASE("minkowski norms respect the Delta bound") {
    std::mt19937_64 rng(43);
    const auto delta = vdw_delta_table(8, true).values;
    for (int t = 0; t < 42; ++t) {
        const std::size_t n = 2 + t % 7;
        const auto b = oracle::random_basis(rng, n, n, -3, 3);
        const Lattice l(b);
        const auto mins = successive_minima(l).minima_sq;
        const auto r = minkowski_reduce(l);
        check_transform(r, b);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(norm_sq(r.basis[i]) >= mins[i]);
            CHECK(norm_sq(r.basis[i]) <= delta[i] * mins[i]);
        }
        CHECK(norm_sq(r.basis[0]) == mins[0]);
        for (std::size_t k = 1; k <= n; ++k)
            CHECK(is_primitive_tuple(l, RationalMatrix(r.basis.begin(), r.basis.begin() + k)).verdict);
    }
}

TEST_CASE("minkowski maximum never beats the shortest basis") {
    std::mt19937_64 rng(48);
    int strict = 0;
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + t % 3;
        const Lattice l(oracle::random_basis(rng, n, n, -4, 4));
        const auto mk = minkowski_reduce(l).max_norm_sq();
        const auto sb = shortest_basis(l);
        REQUIRE(sb.certified);
        CHECK(mk >= sb.max_norm_sq);
        strict += mk > sb.max_norm_sq;
    }
    MESSAGE("strictly larger Minkowski maximum in " << strict << " of 40");
}

TEST_CASE("kz reduction sandwich") {
    std::mt19937_64 rng(44);
    for (int t = 0; t < 42; ++t) {
        const std::size_t n = 2 + t % 7;
        const auto b = oracle::random_basis(rng, n, n + t % 2, -3, 3);
        const Lattice l(b);
        const auto mins = successive_minima(l).minima_sq;
        const auto r = kz_reduce(l);
        check_transform(r, b);
        CHECK(norm_sq(r.basis[0]) == mins[0]);
        for (std::size_t i = 0; i < n; ++i) {
            const long k = static_cast<long>(i) + 1;
            CHECK(norm_sq(r.basis[i]) * (k + 3) >= mins[i] * 4);
            CHECK(norm_sq(r.basis[i]) * 4 <= mins[i] * (k + 3));
        }
    }
}

TEST_CASE("kz steps are projected minima") {
    std::mt19937_64 rng(45);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + t % 4;
        const auto b = oracle::random_basis(rng, n, n, -3, 3);
        const Lattice l(b);
        const auto r = kz_reduce(l);
        const auto g = gram_schmidt(r.basis);
        for (std::size_t i = 0; i < n; ++i) {
            const RationalMatrix prefix(r.basis.begin(), r.basis.begin() + i);
            const auto step = kz_step(l, prefix);
            CHECK(step.projected_min_sq == g.norms_sq[i]);
            CHECK(norm_sq(r.basis[i]) == step.full_min_sq);
            CHECK(step.candidates.front() == r.basis[i]);
            CHECK(r.steps[i].ties == step.candidates.size());
            const Lattice proj = i == 0 ? l : project_orthogonal(l, prefix);
            CHECK(shortest_vector(proj).norm_sq == g.norms_sq[i]);
        }
    }
}

TEST_CASE("shortest basis against exhaustive search") {
    std::mt19937_64 rng(46);
    for (int t = 0; t < 25; ++t) {
        const std::size_t n = 2 + t % 2;
        const auto b = well_conditioned(rng, n, 3);
        const Lattice l(b);
        const auto rep = shortest_basis(l);
        CHECK(rep.certified);
        CHECK(is_basis_of(l, rep.basis));
        CHECK(max_row(rep.basis) == rep.max_norm_sq);
        const auto mink = minkowski_reduce(l).max_norm_sq();
        const auto pool = oracle::brute_vectors_up_to(b, mink);
        CHECK(rep.max_norm_sq == brute_shortest_basis(b, pool));
    }
}

TEST_CASE("shortest basis lies between lambda_n and the KZ maximum") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 3 + t % 4;
        const auto b = oracle::random_basis(rng, n, n, -3, 3);
        const Lattice l(b);
        const auto rep = shortest_basis(l);
        CHECK(rep.certified);
        CHECK(is_basis_of(l, rep.basis));
        CHECK(rep.max_norm_sq >= successive_minima(l).minima_sq.back());
        CHECK(rep.max_norm_sq <= kz_reduce(l).max_norm_sq());
        CHECK(rep.max_norm_sq <= minkowski_reduce(l).max_norm_sq());
    }
}

TEST_CASE("D5* reductions") {
    const auto d5 = dual_root_d(5);
    const auto m = minkowski_reduce(d5);
    CHECK(m.max_norm_sq() == q(5, 4));
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(norm_sq(m.basis[i]) == 1);
    CHECK(shortest_basis(d5).max_norm_sq == q(5, 4));
}

TEST_CASE("Delta table closed form") {
    const auto plain = vdw_delta_table(20, false);
    const auto improved = vdw_delta_table(20, true);
    for (std::size_t i = 0; i < 20; ++i) {
        const long k = static_cast<long>(i) + 1;
        Rational closed = 1;
        for (long j = 5; j <= k; ++j)
            closed *= q(5, 4);
        CHECK(plain.values[i] == closed);
        CHECK(improved.values[i] <= plain.values[i]);
        CHECK(improved.improved[i] == (k == 6 || k == 7));
    }
    CHECK(improved.values[5] == q(3, 2));
    CHECK(improved.values[6] == q(7, 4));
    CHECK(improved.values[7] == q(19, 8));
}
