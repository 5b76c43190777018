#include "mkz/exact_arith.hpp"

#include <algorithm>
#include <utility>

namespace mkz {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0)
        throw Singular("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw ParseError("empty rational");
    auto valid_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (i == s.size())
            return false;
        return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!valid_int(text))
            throw ParseError("bad rational '" + text + "'");
        return Rational(Integer(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-')
        throw ParseError("bad rational '" + text + "'");
    Integer d(den);
    if (d == 0)
        throw ParseError("zero denominator in '" + text + "'");
    return make_rational(Integer(num), d);
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer floor_rational(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer round_nearest(const Rational& q) {
    return floor_rational(q + make_rational(1, 2));
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

RationalVector zero_vector(std::size_t n) { return RationalVector(n, Rational(0)); }

RationalVector unit_vector(std::size_t n, std::size_t i) {
    RationalVector v(n, Rational(0));
    v.at(i) = 1;
    return v;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            s += a[i] * b[i];
    return s;
}

Rational norm_sq(const RationalVector& a) { return dot(a, a); }

RationalVector add(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("add: length mismatch");
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("sub: length mismatch");
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

RationalVector scale(const RationalVector& a, const Rational& s) {
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] * s;
    return r;
}

void axpy(RationalVector& a, const Rational& s, const RationalVector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("axpy: length mismatch");
    if (sgn(s) == 0)
        return;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(b[i]) != 0)
            a[i] += s * b[i];
}

bool is_zero(const RationalVector& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool is_integral(const RationalVector& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& q) { return is_integral(q); });
}

RationalVector to_rational(const IntVector& v) {
    RationalVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = Rational(v[i]);
    return r;
}

IntVector to_integer(const RationalVector& v) {
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_integral(v[i]))
            throw NotInLattice("non-integral entry " + to_string(v[i]));
        r[i] = v[i].get_num();
    }
    return r;
}

RationalVector sign_normalized(RationalVector v) {
    for (const auto& x : v) {
        if (sgn(x) > 0)
            return v;
        if (sgn(x) < 0) {
            for (auto& y : v)
                y = -y;
            return v;
        }
    }
    return v;
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

RationalVector combine(const RationalVector& x, const RationalMatrix& rows) {
    if (x.size() != rows.size())
        throw DimensionMismatch("combine: coefficient count mismatch");
    RationalVector r = rows.empty() ? RationalVector{} : zero_vector(rows[0].size());
    for (std::size_t i = 0; i < x.size(); ++i)
        axpy(r, x[i], rows[i]);
    return r;
}

RationalVector combine(const IntVector& x, const RationalMatrix& rows) {
    return combine(to_rational(x), rows);
}

RationalMatrix identity_matrix(std::size_t n) {
    RationalMatrix m(n, zero_vector(n));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

RationalMatrix transpose(const RationalMatrix& m) {
    if (m.empty())
        return {};
    RationalMatrix t(m[0].size(), RationalVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            t[j][i] = m[i][j];
    return t;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix r;
    r.reserve(a.size());
    for (const auto& row : a)
        r.push_back(combine(row, b));
    return r;
}

RationalMatrix to_rational(const IntMatrix& m) {
    RationalMatrix r;
    r.reserve(m.size());
    for (const auto& row : m)
        r.push_back(to_rational(row));
    return r;
}

IntMatrix to_integer(const RationalMatrix& m) {
    IntMatrix r;
    r.reserve(m.size());
    for (const auto& row : m)
        r.push_back(to_integer(row));
    return r;
}

IntMatrix int_identity(std::size_t n) {
    IntMatrix m(n, IntVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.empty())
        return {};
    const std::size_t inner = b.size();
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    IntMatrix r(a.size(), IntVector(cols, Integer(0)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != inner)
            throw DimensionMismatch("multiply: inner dimension mismatch");
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0)
                continue;
            for (std::size_t j = 0; j < cols; ++j)
                r[i][j] += a[i][k] * b[k][j];
        }
    }
    return r;
}

RationalMatrix gram_matrix(const RationalMatrix& basis) {
    const std::size_t n = basis.size();
    RationalMatrix g(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            g[i][j] = dot(basis[i], basis[j]);
            g[j][i] = g[i][j];
        }
    return g;
}

GSOData gram_schmidt(const RationalMatrix& basis) {
    const std::size_t n = basis.size();
    GSOData g;
    g.bstar.reserve(n);
    g.mu.assign(n, zero_vector(n));
    g.norms_sq.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector v = basis[i];
        for (std::size_t j = 0; j < i; ++j) {
            g.mu[i][j] = dot(basis[i], g.bstar[j]) / g.norms_sq[j];
            axpy(v, -g.mu[i][j], g.bstar[j]);
        }
        g.mu[i][i] = 1;
        Rational nsq = norm_sq(v);
        if (sgn(nsq) == 0)
            throw DependentRows("gram_schmidt: row " + std::to_string(i) + " is dependent");
        g.bstar.push_back(std::move(v));
        g.norms_sq.push_back(std::move(nsq));
    }
    return g;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& a) {
    std::vector<std::size_t> pivots;
    if (a.empty())
        return pivots;
    const std::size_t rows = a.size();
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(a[p][c]) == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        const Rational inv = 1 / a[r][c];
        for (auto& x : a[r])
            x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][c]) == 0)
                continue;
            const Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(a[r][j]) != 0)
                    a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::size_t rank(const RationalMatrix& m) {
    RationalMatrix a = m;
    return rref(a).size();
}

Rational determinant(const RationalMatrix& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n)
            throw DimensionMismatch("determinant: matrix not square");
    RationalMatrix a = m;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a[p][c]) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(a[i][c]) == 0)
                continue;
            const Rational f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j)
                if (sgn(a[c][j]) != 0)
                    a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

Integer determinant(const IntMatrix& m) {
    // Bareiss fraction-free elimination.
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n)
            throw DimensionMismatch("determinant: matrix not square");
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

RationalMatrix inverse(const RationalMatrix& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n)
            throw DimensionMismatch("inverse: matrix not square");
    RationalMatrix a(n, RationalVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = m[i][j];
        a[i][n + i] = 1;
    }
    const auto pivots = rref(a);
    if (pivots.size() < n || pivots.back() >= n)
        throw Singular("inverse: matrix is singular");
    RationalMatrix inv(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = a[i][n + j];
    return inv;
}

RationalVector solve_left(const RationalMatrix& rows, const RationalVector& v) {
    // x * rows = v  <=>  rows^T x^T = v^T; eliminate on the augmented system.
    const std::size_t k = rows.size();
    const std::size_t m = v.size();
    for (const auto& r : rows)
        if (r.size() != m)
            throw DimensionMismatch("solve_left: length mismatch");
    RationalMatrix a(m, RationalVector(k + 1));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < k; ++i)
            a[j][i] = rows[i][j];
        a[j][k] = v[j];
    }
    const auto pivots = rref(a);
    if (!pivots.empty() && pivots.back() == k)
        throw NotInSpan("solve_left: vector is not in the span of the rows");
    if (pivots.size() != k)
        throw DependentRows("solve_left: rows are linearly dependent");
    RationalVector x(k);
    for (std::size_t r = 0; r < k; ++r)
        x[pivots[r]] = a[r][k];
    return x;
}

RationalMatrix left_kernel(const RationalMatrix& m) {
    // Null space of m^T.
    RationalMatrix a = transpose(m);
    const std::size_t n = m.size();
    if (a.empty()) {
        return identity_matrix(n);
    }
    const auto pivots = rref(a);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    RationalMatrix kernel;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        RationalVector x = zero_vector(n);
        x[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            x[pivots[r]] = -a[r][f];
        kernel.push_back(std::move(x));
    }
    return kernel;
}

namespace {

// row_a <- s*row_a + t*row_b ; row_b <- u*row_b - w*row_a (old values)
void combine_rows(IntVector& ra, IntVector& rb, const Integer& s, const Integer& t,
                  const Integer& u, const Integer& w) {
    for (std::size_t j = 0; j < ra.size(); ++j) {
        Integer na = s * ra[j] + t * rb[j];
        Integer nb = u * rb[j] - w * ra[j];
        ra[j] = std::move(na);
        rb[j] = std::move(nb);
    }
}

void sub_multiple(IntVector& target, const Integer& q, const IntVector& src) {
    if (q == 0)
        return;
    for (std::size_t j = 0; j < target.size(); ++j)
        if (src[j] != 0)
            target[j] -= q * src[j];
}

} // namespace

HermiteResult hnf(const IntMatrix& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    HermiteResult res{m, int_identity(rows)};
    auto& h = res.h;
    auto& u = res.u;
    std::size_t p = 0;
    for (std::size_t c = 0; c < cols && p < rows; ++c) {
        for (std::size_t i = p + 1; i < rows; ++i) {
            if (h[i][c] == 0)
                continue;
            if (h[p][c] == 0) {
                std::swap(h[p], h[i]);
                std::swap(u[p], u[i]);
                continue;
            }
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[p][c].get_mpz_t(),
                       h[i][c].get_mpz_t());
            const Integer ap = h[p][c] / g;
            const Integer ai = h[i][c] / g;
            combine_rows(h[p], h[i], s, t, ap, ai);
            combine_rows(u[p], u[i], s, t, ap, ai);
        }
        if (h[p][c] == 0)
            continue;
        if (h[p][c] < 0) {
            for (auto& x : h[p])
                x = -x;
            for (auto& x : u[p])
                x = -x;
        }
        for (std::size_t i = 0; i < p; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h[i][c].get_mpz_t(), h[p][c].get_mpz_t());
            sub_multiple(h[i], q, h[p]);
            sub_multiple(u[i], q, u[p]);
        }
        ++p;
    }
    return res;
}

IntVector snf_divisors(const IntMatrix& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    const std::size_t d = std::min(rows, cols);
    IntMatrix a = m;
    IntVector out(d, Integer(0));

    auto swap_cols = [&](std::size_t x, std::size_t y) {
        if (x == y)
            return;
        for (auto& row : a)
            std::swap(row[x], row[y]);
    };

    for (std::size_t t = 0; t < d; ++t) {
        // smallest nonzero entry of the trailing block as pivot
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (!found || abs(a[i][j]) < abs(a[pi][pj]))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found)
            break;
        std::swap(a[t], a[pi]);
        swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                sub_multiple(a[i], q, a[t]);
                if (a[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                if (q != 0)
                    for (std::size_t i = t; i < rows; ++i)
                        if (a[i][t] != 0)
                            a[i][j] -= q * a[i][t];
                if (a[t][j] != 0)
                    clean = false;
            }
            if (!clean) {
                // move the smallest remainder in row/column t into the pivot
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) {
                        bi = t;
                        bj = j;
                    }
                std::swap(a[t], a[bi]);
                swap_cols(t, bj);
                continue;
            }
            // pivot must divide the whole trailing block
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                        for (std::size_t k = t; k < cols; ++k)
                            a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        out[t] = abs(a[t][t]);
    }
    return out;
}

Integer gcd_of(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

Integer lcm_of_denominators(const RationalVector& v) {
    Integer l = 1;
    for (const auto& x : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

} // namespace mkz
