#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

using namespace mkz;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

IntMatrix random_int(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
    return to_integer(oracle::random_int_matrix(rng, r, c, lo, hi));
}

} // namespace

TEST_CASE("rational scalars are canonical") {
    CHECK(make_rational(6, 4) == q(3, 2));
    CHECK(to_string(make_rational(6, -4)) == "-3/2");
    CHECK(to_string(q(5)) == "5");
    CHECK(parse_rational("73/36") == q(73, 36));
    CHECK(parse_rational("-7") == q(-7));
    CHECK_THROWS_AS(make_rational(1, 0), Singular);
}

TEST_CASE("rounding rounds halves up") {
    CHECK(round_nearest(q(1, 2)) == 1);
    CHECK(round_nearest(q(-1, 2)) == 0);
    CHECK(round_nearest(q(-3, 2)) == -1);
    CHECK(round_nearest(q(7, 3)) == 2);
    CHECK(floor_rational(q(-1, 3)) == -1);
    CHECK(is_integral(q(4, 2)));
    CHECK_FALSE(is_integral(q(1, 3)));
}

TEST_CASE("vector helpers") {
    const RationalVector a{q(1), q(-1, 2), q(0)};
    const RationalVector b{q(2), q(3), q(1, 3)};
    CHECK(dot(a, b) == q(1, 2));
    CHECK(norm_sq(a) == q(5, 4));
    CHECK(sign_normalized(RationalVector{q(0), q(-2), q(1)}) == RationalVector{q(0), q(2), q(-1)});
    CHECK(lex_less(RationalVector{q(0), q(1)}, RationalVector{q(1), q(0)}));
    CHECK(combine(IntVector{2, -1}, RationalMatrix{a, b}) == sub(scale(a, 2), b));
    CHECK_THROWS_AS(to_integer(a), NotInLattice);
}

TEST_CASE("inverse is exact on random invertible matrices") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        RationalMatrix m = oracle::random_basis(rng, 5, 5, -5, 5);
        m[t % 5][0] += q(1, 7);
        if (rank(m) < 5)
            continue;
        CHECK(multiply(m, inverse(m)) == identity_matrix(5));
        CHECK(multiply(inverse(m), m) == identity_matrix(5));
    }
    CHECK_THROWS_AS(inverse(RationalMatrix{{q(1), q(2)}, {q(2), q(4)}}), Singular);
}

TEST_CASE("GSO norms multiply to the Gram determinant") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + t % 5;
        const auto b = oracle::random_basis(rng, n, n + t % 2, -4, 4);
        const auto g = gram_schmidt(b);
        Rational prod = 1;
        for (const auto& x : g.norms_sq)
            prod *= x;
        CHECK(prod == determinant(gram_matrix(b)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                CHECK(dot(g.bstar[i], g.bstar[j]) == 0);
    }
    CHECK_THROWS_AS(gram_schmidt(RationalMatrix{{q(1), q(1)}, {q(2), q(2)}}), DependentRows);
}

TEST_CASE("integer and rational determinants agree") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 30; ++t) {
        const auto m = random_int(rng, 4, 4, -6, 6);
        CHECK(Rational(determinant(m)) == determinant(to_rational(m)));
    }
    CHECK(determinant(RationalMatrix{{q(1, 2), q(1)}, {q(1), q(4)}}) == q(1));
}

TEST_CASE("hnf: U M = H, U unimodular, echelon form") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 40; ++t) {
        const std::size_t r = 2 + t % 4, c = 2 + (t / 4) % 4;
        const auto m = random_int(rng, r, c, -9, 9);
        const auto res = hnf(m);
        CHECK(multiply(res.u, m) == res.h);
        CHECK(abs(determinant(res.u)) == 1);
        std::size_t last_pivot = 0;
        bool first = true;
        bool seen_zero = false;
        for (std::size_t i = 0; i < res.h.size(); ++i) {
            const auto& row = res.h[i];
            const auto it = std::find_if(row.begin(), row.end(), [](const Integer& x) { return x != 0; });
            if (it == row.end()) {
                seen_zero = true;
                continue;
            }
            CHECK_FALSE(seen_zero);
            const std::size_t p = static_cast<std::size_t>(it - row.begin());
            CHECK(*it > 0);
            if (!first)
                CHECK(p > last_pivot);
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(res.h[k][p] >= 0);
                CHECK(res.h[k][p] < *it);
            }
            last_pivot = p;
            first = false;
        }
    }
}

TEST_CASE("snf divisors") {
    CHECK(snf_divisors(IntMatrix{{2, 0, 0}, {0, 4, 0}, {0, 0, 6}}) == IntVector{2, 2, 12});
    CHECK(snf_divisors(IntMatrix{{1, 2}, {2, 4}}) == IntVector{1, 0});
    std::mt19937_64 rng(15);
    for (int t = 0; t < 40; ++t) {
        const auto m = random_int(rng, 4, 4, -5, 5);
        const auto d = snf_divisors(m);
        Integer prod = 1;
        for (std::size_t i = 0; i < d.size(); ++i) {
            prod *= d[i];
            if (i + 1 < d.size() && d[i] != 0)
                CHECK(d[i + 1] % d[i] == 0);
        }
        CHECK(prod == abs(determinant(m)));
    }
}

TEST_CASE("primitive tuple coordinates have unit divisors") {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 30; ++t) {
        const auto u = oracle::random_unimodular(rng, 5);
        const IntMatrix prefix(u.begin(), u.begin() + 1 + t % 4);
        const auto d = snf_divisors(prefix);
        CHECK(std::all_of(d.begin(), d.end(), [](const Integer& z) { return z == 1; }));
    }
}

TEST_CASE("solve_left and left_kernel") {
    const RationalMatrix rows{{q(1), q(0), q(1)}, {q(0), q(1), q(1)}};
    CHECK(solve_left(rows, RationalVector{q(2), q(3), q(5)}) == RationalVector{q(2), q(3)});
    CHECK_THROWS_AS(solve_left(rows, RationalVector{q(1), q(0), q(0)}), NotInSpan);
    const RationalMatrix dep{{q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}};
    const auto k = left_kernel(dep);
    REQUIRE(k.size() == 1);
    CHECK(combine(k[0], dep) == zero_vector(2));
    CHECK(rank(dep) == 2);
}

TEST_CASE("gcd and denominators") {
    CHECK(gcd_of(IntVector{6, -9, 15}) == 3);
    CHECK(lcm_of_denominators(RationalVector{q(1, 4), q(1, 6), q(2)}) == 12);
}
