#include "mkz/reduction.hpp"

#include <algorithm>
#include <utility>

namespace mkz {

namespace {

void row_sub(RationalVector& a, const Integer& q, const RationalVector& b) {
    axpy(a, Rational(-q), b);
}

void row_sub(IntVector& a, const Integer& q, const IntVector& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (b[j] != 0)
            a[j] -= q * b[j];
}

} // namespace

ReductionResult lll(const Lattice& lattice, const Rational& delta) {
    if (delta <= make_rational(1, 4) || delta >= 1)
        throw PreconditionViolated("LLL needs 1/4 < delta < 1");
    const std::size_t n = lattice.rank();
    RationalMatrix b = lattice.basis();
    IntMatrix u = int_identity(n);
    GSOData g = gram_schmidt(b);
    auto& mu = g.mu;
    auto& bn = g.norms_sq;

    auto size_reduce = [&](std::size_t k, std::size_t l) {
        const Integer q = round_nearest(mu[k][l]);
        if (q == 0)
            return;
        row_sub(b[k], q, b[l]);
        row_sub(u[k], q, u[l]);
        for (std::size_t j = 0; j < l; ++j)
            mu[k][j] -= q * mu[l][j];
        mu[k][l] -= q;
    };

    std::size_t k = 1;
    while (k < n) {
        size_reduce(k, k - 1);
        if (bn[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
            const Rational m = mu[k][k - 1];
            const Rational big = bn[k] + m * m * bn[k - 1];
            mu[k][k - 1] = m * bn[k - 1] / big;
            bn[k] = bn[k - 1] * bn[k] / big;
            bn[k - 1] = big;
            std::swap(b[k], b[k - 1]);
            std::swap(u[k], u[k - 1]);
            for (std::size_t j = 0; j + 1 < k; ++j)
                std::swap(mu[k][j], mu[k - 1][j]);
            for (std::size_t i = k + 1; i < n; ++i) {
                const Rational t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - m * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            k = std::max<std::size_t>(1, k - 1);
        } else {
            for (std::size_t l = k - 1; l-- > 0;)
                size_reduce(k, l);
            ++k;
        }
    }

    ReductionResult res;
    res.kind = ReductionKind::LLL;
    res.transform = std::move(u);
    for (const auto& v : b)
        res.steps.push_back(StepRecord{v, norm_sq(v), 1});
    res.basis = std::move(b);
    return res;
}

} // namespace mkz
