#include "mkz/verification.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

namespace mkz {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string idx(const std::string& base, std::size_t i, const std::string& suffix = "") {
    return base + std::to_string(i) + suffix;
}

} // namespace

bool check_no_unit_coefficient(const DependenceRelation& rel) {
    return std::none_of(rel.coefficients.begin(), rel.coefficients.end(),
                        [](const Integer& a) { return abs(a) == 1; });
}

bool integer_relation_membership(const RationalVector& v_coords,
                                 const RationalVector& relation_shift,
                                 const Integer& max_k) {
    if (v_coords.size() != relation_shift.size())
        throw DimensionMismatch("integer_relation_membership: length mismatch");
    for (Integer j = 0; j < max_k; ++j) {
        bool integral = true;
        for (std::size_t c = 0; c < v_coords.size() && integral; ++c)
            integral = is_integral(v_coords[c] + Rational(j) * relation_shift[c]);
        if (integral)
            return true;
    }
    return false;
}

GeneratorSystem generator_system(const RationalMatrix& generators) {
    if (generators.size() < 2)
        throw PreconditionViolated("generator_system: need at least two generators");
    GeneratorSystem sys;
    sys.relation = linear_dependence(generators);
    const auto& a = sys.relation.coefficients;
    if (std::any_of(a.begin(), a.end(), [](const Integer& x) { return x == 0; }))
        throw ConstructionMismatch("dependence support differs from the generator set");
    const RationalMatrix m(generators.begin() + 1, generators.end());
    sys.m_inverse = inverse(m);
    for (std::size_t i = 1; i < a.size(); ++i)
        sys.shift.push_back(Rational(a[i]) / Rational(a[0]));
    sys.max_k = abs(a[0]);
    return sys;
}

bool in_generated_lattice(const GeneratorSystem& sys, const RationalVector& v) {
    if (v.size() != sys.m_inverse.size())
        throw DimensionMismatch("in_generated_lattice: wrong vector length");
    RationalVector coords = zero_vector(v.size());
    for (std::size_t t = 0; t < v.size(); ++t)
        if (sgn(v[t]) != 0)
            axpy(coords, v[t], sys.m_inverse[t]);
    return integer_relation_membership(coords, sys.shift, sys.max_k);
}

namespace {

// Membership test for signed 0/1 vectors with every coordinate of v * M^-1
// scaled to a common denominator and kept in int64 modulo that denominator.
class ModularScanner {
public:
    explicit ModularScanner(const GeneratorSystem& sys) : sys_(sys) {
        const std::size_t n = sys.m_inverse.size();
        Integer den = 1;
        for (const auto& row : sys.m_inverse)
            den = lcm(den, lcm_of_denominators(row));
        den = lcm(den, lcm_of_denominators(sys.shift));
        const Integer limit = Integer(std::numeric_limits<std::int64_t>::max() / 4);
        fast_ = den <= limit && sys.max_k <= limit / den;
        if (!fast_)
            return;
        den_ = den.get_si();
        max_k_ = sys.max_k.get_si();
        auto reduce = [&](const Rational& q) {
            Integer z = q.get_num() * (den / q.get_den());
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), den.get_mpz_t());
            return static_cast<std::int64_t>(r.get_si());
        };
        rows_.assign(n, std::vector<std::int64_t>(n));
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t c = 0; c < n; ++c)
                rows_[t][c] = reduce(sys.m_inverse[t][c]);
        for (const auto& q : sys.shift)
            shift_.push_back(reduce(q));
    }

    bool fast() const { return fast_; }
    std::size_t dim() const { return sys_.m_inverse.size(); }

    void add_row(std::vector<std::int64_t>& acc, std::size_t t, int sign) const {
        const auto& row = rows_[t];
        for (std::size_t c = 0; c < acc.size(); ++c) {
            std::int64_t x = acc[c] + (sign > 0 ? row[c] : den_ - row[c]);
            if (x >= den_)
                x -= den_;
            acc[c] = x;
        }
    }

    bool member(const std::vector<std::int64_t>& acc) const {
        for (std::int64_t j = 0; j < max_k_; ++j) {
            bool ok = true;
            for (std::size_t c = 0; c < acc.size() && ok; ++c)
                ok = (acc[c] + j * shift_[c]) % den_ == 0;
            if (ok)
                return true;
        }
        return false;
    }

    bool member_slow(const RationalVector& v) const { return in_generated_lattice(sys_, v); }

private:
    const GeneratorSystem& sys_;
    bool fast_ = false;
    std::int64_t den_ = 1;
    std::int64_t max_k_ = 1;
    std::vector<std::vector<std::int64_t>> rows_;
    std::vector<std::int64_t> shift_;
};

struct FamilyResult {
    std::uint64_t checked = 0;
    std::vector<std::vector<std::pair<std::size_t, int>>> hits;
};

// All index tuples i_1 < ... < i_r with the given signs; tuples whose support
// is in `excluded` are skipped.
FamilyResult scan_family(const ModularScanner& scanner, const std::vector<int>& signs,
                         const std::set<std::vector<std::size_t>>& excluded, unsigned workers) {
    const std::size_t n = scanner.dim();
    const std::size_t r = signs.size();
    std::vector<FamilyResult> per_first(n);

    auto run_first = [&](std::size_t first) {
        FamilyResult& out = per_first[first];
        std::vector<std::size_t> chosen{first};
        std::vector<std::vector<std::int64_t>> acc(r, std::vector<std::int64_t>(n, 0));
        if (scanner.fast())
            scanner.add_row(acc[0], first, signs[0]);

        std::function<void(std::size_t)> rec = [&](std::size_t depth) {
            if (depth == r) {
                if (!excluded.empty() && excluded.count(chosen))
                    return;
                ++out.checked;
                bool hit;
                if (scanner.fast()) {
                    hit = scanner.member(acc[r - 1]);
                } else {
                    RationalVector v = zero_vector(n);
                    for (std::size_t d = 0; d < r; ++d)
                        v[chosen[d]] = signs[d];
                    hit = scanner.member_slow(v);
                }
                if (hit) {
                    std::vector<std::pair<std::size_t, int>> h;
                    for (std::size_t d = 0; d < r; ++d)
                        h.emplace_back(chosen[d], signs[d]);
                    out.hits.push_back(std::move(h));
                }
                return;
            }
            for (std::size_t t = chosen.back() + 1; t + (r - depth) <= n; ++t) {
                chosen.push_back(t);
                if (scanner.fast()) {
                    acc[depth] = acc[depth - 1];
                    scanner.add_row(acc[depth], t, signs[depth]);
                }
                rec(depth + 1);
                chosen.pop_back();
            }
        };
        rec(1);
    };

    const unsigned w = std::max(1u, workers);
    if (w == 1) {
        for (std::size_t f = 0; f < n; ++f)
            run_first(f);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(w);
        for (unsigned id = 0; id < w; ++id)
            pool.emplace_back([&, id] {
                try {
                    for (std::size_t f = id; f < n; f += w)
                        run_first(f);
                } catch (...) {
                    errors[id] = std::current_exception();
                }
            });
        for (auto& t : pool)
            t.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    FamilyResult merged;
    for (auto& fr : per_first) {
        merged.checked += fr.checked;
        for (auto& h : fr.hits)
            merged.hits.push_back(std::move(h));
    }
    return merged;
}

} // namespace

AppendixReport check_generator_family(const GeneratedLattice& g, std::size_t weight,
                                      unsigned workers, const std::string& id) {
    if (weight != 3 && weight != 5)
        throw BadParams("generator family check supports weights 3 and 5");
    for (const auto& s : g.supports)
        if (s.size() != weight)
            throw ConstructionMismatch("generator support size differs from the family weight");
    const auto t0 = Clock::now();
    const std::size_t n = g.lattice.ambient_dim();

    AppendixReport rep;
    rep.lattice_id = id;
    const GeneratorSystem sys = generator_system(g.generators);
    rep.relation = sys.relation;
    rep.no_unit_coefficient = check_no_unit_coefficient(sys.relation);
    const ModularScanner scanner(sys);

    std::set<std::vector<std::size_t>> generators;
    for (auto s : g.supports) {
        std::sort(s.begin(), s.end());
        generators.insert(s);
    }
    const std::set<std::vector<std::size_t>> none;

    struct Family {
        std::string name;
        std::vector<int> signs;
        bool skip_generators;
    };
    std::vector<Family> families{{"pairs e_i-e_j", {1, -1}, false}};
    if (weight == 5) {
        families.push_back({"quadruples ++--", {1, 1, -1, -1}, false});
        families.push_back({"quadruples +-+-", {1, -1, 1, -1}, false});
        families.push_back({"quadruples +--+", {1, -1, -1, 1}, false});
        families.push_back({"quintuples +++++ (non-generators)", {1, 1, 1, 1, 1}, true});
    } else {
        families.push_back({"triples +++ (non-generators)", {1, 1, 1}, true});
    }

    for (const auto& fam : families) {
        FamilyResult fr = scan_family(scanner, fam.signs, fam.skip_generators ? generators : none, workers);
        rep.families_checked.push_back({fam.name, fr.checked});
        for (const auto& h : fr.hits) {
            RationalVector v = zero_vector(n);
            for (const auto& [i, s] : h)
                v[i] = s;
            rep.violations.push_back(std::move(v));
        }
    }
    rep.exhaustiveness = "generators have weight " + std::to_string(weight) +
                         ", so every lattice vector has coordinate sum = 0 mod " +
                         std::to_string(weight) +
                         "; the nonzero integer vectors of norm below " + std::to_string(weight) +
                         " with that property, and the 0/1 vectors of norm " +
                         std::to_string(weight) + ", are exactly the scanned families up to sign";
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

AppendixReport check_shortest_vectors_42(unsigned workers) {
    return check_generator_family(lattice42(), 5, workers, "lattice42");
}

AppendixReport check_attempt21(unsigned workers) {
    return check_generator_family(attempt21(), 3, workers, "attempt21");
}

DifferenceMinimum difference_lattice_min(long m) {
    if (m < 2)
        throw BadParams("difference_lattice_min needs m >= 2");
    // Minimizers take coefficients in {t, t+1}; with r entries equal to t+1
    // the squared norm is m r (m - r), independent of t.
    long best_r = 1;
    Integer best = Integer(m) * (m - 1);
    for (long r = 2; r < m; ++r) {
        const Integer val = Integer(m) * r * (m - r);
        if (val < best) {
            best = val;
            best_r = r;
        }
    }
    RationalVector w(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i)
        w[i] = Rational((i < best_r ? m : 0) - best_r);
    if (norm_sq(w) != Rational(best))
        throw Error("difference_lattice_min: witness norm mismatch (internal error)");
    return DifferenceMinimum{Rational(best), std::move(w)};
}

bool compare_rationals(const Rational& a, const std::string& relation, const Rational& b) {
    if (relation == "<")
        return a < b;
    if (relation == "<=")
        return a <= b;
    if (relation == "=")
        return a == b;
    if (relation == ">=")
        return a >= b;
    if (relation == ">")
        return a > b;
    if (relation == "!=")
        return a != b;
    throw BadParams("unknown relation " + relation);
}

void TheoremReport::set(const std::string& key, const Rational& value) {
    for (auto& [k, v] : quantities)
        if (k == key) {
            v = value;
            return;
        }
    quantities.emplace_back(key, value);
}

bool TheoremReport::has(const std::string& key) const {
    return std::any_of(quantities.begin(), quantities.end(),
                       [&](const auto& kv) { return kv.first == key; });
}

const Rational& TheoremReport::get(const std::string& key) const {
    for (const auto& [k, v] : quantities)
        if (k == key)
            return v;
    throw BadParams("report has no quantity " + key);
}

void TheoremReport::compare(const std::string& c, const std::string& lhs, const std::string& relation,
                            const std::string& rhs) {
    verdicts.push_back(Verdict{c, lhs, relation, rhs, compare_rationals(get(lhs), relation, get(rhs))});
}

void TheoremReport::check(const std::string& name, bool holds) { checks.push_back(Check{name, holds}); }

void TheoremReport::flag(const std::string& name, bool value) { flags.push_back(Check{name, value}); }

bool TheoremReport::passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.holds; }) &&
           std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.holds; });
}

bool TheoremReport::recheck() const {
    for (const auto& v : verdicts)
        if (compare_rationals(get(v.lhs), v.relation, get(v.rhs)) != v.holds)
            return false;
    return true;
}

namespace {

enum class StepKind { Unit, Glue };

struct StructuredStep {
    StepKind kind;
    std::size_t block; // 1-based
    std::size_t coord; // unit coordinate (0-based)
    RationalVector vector;
    Rational predicted_sq; // predicted projected squared norm
    long m = 0;        // difference-lattice size for units after the glue
};

std::vector<StructuredStep> structured_steps(std::size_t k) {
    const auto p = glued_params(k);
    const std::size_t d = p.dimension();
    std::vector<bool> spanned(d, false);
    std::vector<StructuredStep> steps;

    for (std::size_t j = 1; j <= k; ++j) {
        const std::size_t lo = p.dims[j - 1];
        const std::size_t hi = p.dims[j];
        const long psq = p.primes[j - 1] * p.primes[j - 1];
        std::vector<std::size_t> support{0};
        for (std::size_t c = lo; c < hi; ++c)
            support.push_back(c);
        auto unspanned = [&] {
            return static_cast<long>(std::count_if(support.begin(), support.end(),
                                                   [&](std::size_t c) { return !spanned[c]; }));
        };
        auto unit = [&](std::size_t c, bool after_glue) {
            StructuredStep s{StepKind::Unit, j, c, unit_vector(d, c), Rational(1), 0};
            if (after_glue) {
                s.m = unspanned();
                s.predicted_sq = difference_lattice_min(s.m).min_sq / Rational(s.m * s.m);
            }
            spanned[c] = true;
            steps.push_back(std::move(s));
        };
        const std::size_t before_glue = j == 1 ? 2 : 1;
        for (std::size_t c = lo; c < lo + before_glue; ++c)
            unit(c, false);
        steps.push_back(StructuredStep{StepKind::Glue, j, 0, p.glue_vector(j),
                                       make_rational(unspanned(), psq), 0});
        for (std::size_t c = lo + 2; c < hi; ++c)
            unit(c, true);
        for (auto c : support)
            spanned[c] = true;
    }
    return steps;
}

bool residue_structure_ok(std::size_t k, const RationalMatrix& basis) {
    // Exactly one vector per block carries a nonzero residue, and it carries
    // no other nonzero residue.
    const auto p = glued_params(k);
    std::vector<std::size_t> per_block(k, 0);
    for (const auto& b : basis) {
        const auto r = glued_residues(k, b);
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (r.x[i] != 0) {
                ++nonzero;
                ++per_block[i];
            }
        if (nonzero > 1)
            return false;
    }
    return std::all_of(per_block.begin(), per_block.end(), [](std::size_t c) { return c == 1; });
}

std::vector<Rational> sorted_norms(const RationalMatrix& basis) {
    std::vector<Rational> out;
    for (const auto& b : basis)
        out.push_back(norm_sq(b));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

RationalMatrix structured_kz_basis(std::size_t k) {
    RationalMatrix out;
    for (auto& s : structured_steps(k))
        out.push_back(std::move(s.vector));
    return out;
}

TheoremReport verify_kz_structure(std::size_t k, const EnumOptions& opts) {
    const auto t0 = Clock::now();
    TheoremReport rep;
    rep.lattice_id = "glued " + std::to_string(k);
    rep.claim = "Korkin-Zolotarev basis structure of L_k";

    const Lattice lattice = glued_prime_lattice(k);
    const auto steps = structured_steps(k);
    RationalMatrix basis;
    for (const auto& s : steps)
        basis.push_back(s.vector);
    rep.check("structured vectors form a basis of L_k", is_basis_of(lattice, basis));
    rep.check("one glue vector per block in the residue decomposition", residue_structure_ok(k, basis));

    const GSOData gso = gram_schmidt(basis);
    const bool generic = k <= 2;
    RationalMatrix prefix;
    Rational max_full = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        const std::string base = idx("u", i + 1);
        rep.set(base + ".projected_sq", gso.norms_sq[i]);
        rep.set(base + ".predicted_projected_sq", s.predicted_sq);
        rep.compare(base + " projection equals the predicted value", base + ".projected_sq", "=",
                    base + ".predicted_projected_sq");
        if (s.m > 0) {
            const auto dm = difference_lattice_min(s.m);
            rep.set(base + ".difference_m", Rational(s.m));
            rep.set(base + ".difference_min_sq", dm.min_sq);
            rep.set(base + ".scaled_projected_sq", gso.norms_sq[i] * s.m * s.m);
            rep.compare(base + " rescaled projection is the difference-lattice minimum",
                        base + ".scaled_projected_sq", "=", base + ".difference_min_sq");
        }
        const Rational full = norm_sq(s.vector);
        rep.set(base + ".norm_sq", full);
        max_full = std::max(max_full, full);
        if (generic) {
            const KZStep ks = kz_step(lattice, prefix, opts);
            rep.set(base + ".generic_projected_min_sq", ks.projected_min_sq);
            rep.set(base + ".generic_full_min_sq", ks.full_min_sq);
            rep.compare(base + " projection is the generic minimum", base + ".projected_sq", "=",
                        base + ".generic_projected_min_sq");
            rep.compare(base + " norm is the generic minimum among minimizers", base + ".norm_sq", "=",
                        base + ".generic_full_min_sq");
            const RationalVector sn = sign_normalized(s.vector);
            rep.check(base + " is one of the generic KZ candidates",
                      std::find(ks.candidates.begin(), ks.candidates.end(), sn) != ks.candidates.end());
        }
        prefix.push_back(s.vector);
    }
    rep.set("max_u_sq", max_full);
    rep.set("five_quarters", make_rational(5, 4));
    rep.compare("max squared norm of the KZ basis is 5/4", "max_u_sq", "=", "five_quarters");

    if (generic) {
        const auto kz = kz_reduce(lattice, opts);
        rep.set("generic_kz_max_sq", kz.max_norm_sq());
        rep.compare("generic KZ max squared norm is 5/4", "generic_kz_max_sq", "=", "five_quarters");
        rep.check("generic KZ has the same norm multiset", sorted_norms(kz.basis) == sorted_norms(basis));
        rep.check("generic KZ has one glue vector per block", residue_structure_ok(k, kz.basis));
        rep.witnesses.emplace_back("generic_kz_basis", kz.basis);
    }
    rep.witnesses.emplace_back("structured_kz_basis", basis);
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

namespace {

Rational dist_to_integer_sq(const Rational& q) {
    const Rational d = q - Rational(round_nearest(q));
    return d * d;
}

void for_each_residue(const std::vector<long>& primes, const std::function<void(const std::vector<long>&)>& fn) {
    std::vector<long> x(primes.size(), 0);
    for (;;) {
        fn(x);
        std::size_t i = 0;
        while (i < x.size() && ++x[i] == primes[i])
            x[i++] = 0;
        if (i == x.size())
            return;
    }
}

RationalVector residue_class_witness(std::size_t k, const std::vector<long>& x) {
    const auto p = glued_params(k);
    RationalVector w = zero_vector(p.dimension());
    Rational c = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const Rational f(x[i], p.primes[i]);
        c += f;
        const Rational coord = f - Rational(round_nearest(f));
        for (std::size_t j = p.dims[i]; j < p.dims[i + 1]; ++j)
            w[j] = coord;
    }
    w[0] = c - Rational(round_nearest(c));
    return w;
}

} // namespace

Rational residue_class_minimum(std::size_t k, const std::vector<long>& x) {
    const auto p = glued_params(k);
    if (x.size() != k)
        throw DimensionMismatch("residue_class_minimum: one residue per block");
    Rational c = 0;
    Rational total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const long pi = p.primes[i];
        const long r = ((x[i] % pi) + pi) % pi;
        c += make_rational(r, pi);
        const long near = std::min(r, pi - r);
        // p_i^2 coordinates, each at distance near/p_i from Z
        total += Rational(near * near);
    }
    return total + dist_to_integer_sq(c);
}

TheoremReport verify_theorem_gap(std::size_t k, const EnumOptions& opts) {
    const auto t0 = Clock::now();
    const auto p = glued_params(k);
    const std::size_t d = p.dimension();
    const Lattice lattice = glued_prime_lattice(k);
    long big_p = 1;
    for (long q : p.primes)
        big_p *= q;

    TheoremReport rep;
    rep.lattice_id = "glued " + std::to_string(k);
    rep.claim = "Minkowski last vector is longer than the shortest-basis maximum";

    // Residue classes: norm-1 vectors are units, v_d completes {e_2..e_d},
    // and any basis needs a vector with x_1 != 0.
    Rational min_nonintegral;
    Rational vd;
    Rational lambda_bar_lower;
    std::vector<long> vd_x;
    bool have_nonintegral = false, have_vd = false, have_lower = false;
    for_each_residue(p.primes, [&](const std::vector<long>& x) {
        if (std::all_of(x.begin(), x.end(), [](long r) { return r == 0; }))
            return;
        const Rational val = residue_class_minimum(k, x);
        if (!have_nonintegral || val < min_nonintegral) {
            min_nonintegral = val;
            have_nonintegral = true;
        }
        if (x[0] != 0 && (!have_lower || val < lambda_bar_lower)) {
            lambda_bar_lower = val;
            have_lower = true;
        }
        long e1 = 0;
        for (std::size_t i = 0; i < k; ++i)
            e1 = (e1 + x[i] * (big_p / p.primes[i])) % big_p;
        if (e1 == 1 || e1 == big_p - 1) {
            if (!have_vd || val < vd) {
                vd = val;
                vd_x = x;
                have_vd = true;
            }
        }
    });

    rep.set("k", Rational(static_cast<long>(k)));
    rep.set("one", Rational(1));
    rep.set("min_nonintegral_sq", min_nonintegral);
    rep.compare("every non-integral vector is longer than 1", "min_nonintegral_sq", ">", "one");
    rep.set("index_over_Z^d", Rational(big_p));
    rep.compare("the unit vectors alone do not form a basis", "index_over_Z^d", ">", "one");

    const RationalVector vd_w = residue_class_witness(k, vd_x);
    RationalMatrix completion;
    for (std::size_t i = 1; i < d; ++i)
        completion.push_back(unit_vector(d, i));
    completion.push_back(vd_w);
    rep.check("v_d witness lies in L_k", contains(lattice, vd_w));
    rep.check("e_2..e_d with v_d form a basis", is_basis_of(lattice, completion));
    rep.set("v_d_sq", vd);
    rep.set("v_d_witness_sq", norm_sq(vd_w));
    rep.compare("witness attains the residue-class value", "v_d_witness_sq", "=", "v_d_sq");
    rep.compare("v_d^2 exceeds k", "v_d_sq", ">", "k");

    RationalMatrix explicit_basis = lattice.basis();
    Rational explicit_max = 0;
    for (const auto& b : explicit_basis)
        explicit_max = std::max(explicit_max, norm_sq(b));
    rep.set("lambda_bar_sq_upper", explicit_max);
    rep.set("lambda_bar_sq_lower", lambda_bar_lower);
    rep.compare("explicit basis attains the primitive-minimum lower bound", "lambda_bar_sq_upper", "=",
                "lambda_bar_sq_lower");
    rep.set("lambda_bar_sq", lambda_bar_lower);
    rep.compare("Minkowski last vector strictly longer than lambda-bar", "v_d_sq", ">", "lambda_bar_sq");
    rep.set("gap_ratio", vd / lambda_bar_lower);

    if (k <= 2) {
        const auto mk = minkowski_reduce(lattice, opts);
        bool units = true;
        for (std::size_t i = 0; i + 1 < d; ++i)
            units = units && norm_sq(mk.basis[i]) == 1 && is_integral(mk.basis[i]);
        rep.check("generic Minkowski picks unit vectors first", units);
        rep.set("v_d_sq_generic", norm_sq(mk.basis.back()));
        rep.compare("generic Minkowski matches the residue-class value", "v_d_sq_generic", "=", "v_d_sq");
        const auto sb = shortest_basis(lattice, ShortestBasisOptions{opts});
        rep.check("shortest basis search certified", sb.certified);
        rep.check("shortest basis is a basis", is_basis_of(lattice, sb.basis));
        rep.set("lambda_bar_sq_generic", sb.max_norm_sq);
        rep.compare("generic primitive minimum matches", "lambda_bar_sq_generic", "=", "lambda_bar_sq");
        rep.witnesses.emplace_back("minkowski_basis", mk.basis);
        rep.witnesses.emplace_back("shortest_basis", sb.basis);
    }
    rep.witnesses.emplace_back("v_d", RationalMatrix{vd_w});
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

bool gram_similar(const RationalMatrix& a, const RationalMatrix& b) {
    const std::size_t n = a.size();
    if (b.size() != n)
        return false;
    if (n == 0)
        return true;
    Rational min_a = a[0][0], min_b = b[0][0];
    for (std::size_t i = 0; i < n; ++i) {
        min_a = std::min(min_a, a[i][i]);
        min_b = std::min(min_b, b[i][i]);
    }
    if (sgn(min_a) <= 0 || sgn(min_b) <= 0)
        return false;
    const Rational c = min_b / min_a;
    RationalMatrix sa = a;
    for (auto& row : sa)
        for (auto& x : row)
            x *= c;

    std::vector<std::size_t> perm(n);
    std::vector<int> sign(n, 1);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> place = [&](std::size_t i) {
        if (i == n)
            return true;
        for (std::size_t r = 0; r < n; ++r) {
            if (used[r] || b[r][r] != sa[i][i])
                continue;
            for (int s : {1, -1}) {
                if (i == 0 && s < 0)
                    continue;
                bool ok = true;
                for (std::size_t j = 0; j < i && ok; ++j)
                    ok = b[r][perm[j]] * (s * sign[j]) == sa[i][j];
                if (!ok)
                    continue;
                used[r] = true;
                perm[i] = r;
                sign[i] = s;
                if (place(i + 1))
                    return true;
                used[r] = false;
            }
        }
        return false;
    };
    return place(0);
}

TheoremReport verify_minkowski_bounds(const Lattice& lattice, const std::string& id, const EnumOptions& opts) {
    const auto t0 = Clock::now();
    const std::size_t n = lattice.rank();
    if (n < 6)
        throw PreconditionViolated("minkowski bounds need rank >= 6");
    TheoremReport rep;
    rep.lattice_id = id;
    rep.claim = "Minkowski basis versus successive minima";

    const auto mk = minkowski_reduce(lattice, opts);
    const auto mr = successive_minima(lattice, opts);
    const auto table = vdw_delta_table(n, true);
    rep.check("Minkowski output is a basis", is_basis_of(lattice, mk.basis));

    for (std::size_t k = 1; k <= n; ++k) {
        const Rational v = norm_sq(mk.basis[k - 1]);
        const Rational lam = mr.minima_sq[k - 1];
        rep.set(idx("v", k, "_sq"), v);
        rep.set(idx("lambda", k, "_sq"), lam);
        rep.set(idx("delta", k), table.values[k - 1]);
        rep.set(idx("delta", k, "_bound"), table.values[k - 1] * lam);
        rep.compare(idx("v_", k, " at least lambda_") + std::to_string(k), idx("v", k, "_sq"), ">=",
                    idx("lambda", k, "_sq"));
        rep.compare(idx("v_", k, " within the Delta bound"), idx("v", k, "_sq"), "<=", idx("delta", k, "_bound"));
        if (k == 6 || k == 7) {
            const std::string key = idx("k_over_4_bound", k);
            rep.set(key, make_rational(static_cast<long>(k), 4) * lam);
            rep.compare(idx("v_", k, " within (k/4) lambda_k^2"), idx("v", k, "_sq"), "<=", key);
            const bool equality = v == make_rational(static_cast<long>(k), 4) * lam;
            rep.flag(idx("equality_at_", k), equality);
            if (equality) {
                const RationalMatrix prefix(mk.basis.begin(), mk.basis.begin() + k);
                const bool similar = gram_similar(gram_matrix(dual_root_d(k).basis()), gram_matrix(prefix));
                rep.flag(idx("similar_to_D", k, "*"), similar);
                rep.check(idx("equality at ", k, " only for D_k* similarity"), similar);
            }
        }
    }
    rep.witnesses.emplace_back("minkowski_basis", mk.basis);
    rep.witnesses.emplace_back("minima_witnesses", mr.witnesses);
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

TheoremReport verify_perturbed_lift(const PerturbedLift& lift, const AppendixReport& base_check) {
    const auto t0 = Clock::now();
    TheoremReport rep;
    rep.lattice_id = "perturbed43";
    rep.claim = "the shortest vector of the lift lies in no shortest basis";

    const std::size_t n = lift.lifted.size();
    const auto& a = lift.relation.coefficients;
    rep.check("base lattice passes the shortest-vector family check", base_check.success());
    rep.check("lift uses the checked dependence relation",
              base_check.relation.coefficients == lift.relation.coefficients);

    Rational base_min = -1;
    bool integral = true;
    for (const auto& h : lift.lifted) {
        const RationalVector w(h.begin(), h.end() - 1);
        integral = integral && is_integral(w);
        const Rational nw = norm_sq(w);
        if (base_min < 0 || nw < base_min)
            base_min = nw;
    }
    rep.check("base generators are integral", integral);
    const Rational s = lift.height_sum;
    rep.set("height_sum", s);
    rep.set("shortest_sq", s * s);
    rep.set("base_lambda1_sq", base_min);
    rep.compare("vertical vector is shorter than any non-vertical vector", "shortest_sq", "<", "base_lambda1_sq");
    rep.check("vertical vector lies in the lift", contains(lift.lattice, lift.shortest));

    bool shortest_lifts = true;
    Rational max_lifted = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Rational& e = lift.lifted[i].back();
        shortest_lifts = shortest_lifts && e * e <= (e + s) * (e + s) && e * e <= (e - s) * (e - s);
        max_lifted = std::max(max_lifted, norm_sq(lift.lifted[i]));
    }
    rep.check("every lifted generator is the shortest lift of its projection", shortest_lifts);
    rep.set("max_lifted_generator_sq", max_lifted);
    // A basis containing the vertical vector projects onto a basis of the
    // base lattice; those need a vector of norm above the generators' norm,
    // and base norms are integers.
    rep.set("basis_with_shortest_lower_sq", base_min + 1);
    rep.compare("lifted generators beat every basis containing the vertical vector",
                "max_lifted_generator_sq", "<", "basis_with_shortest_lower_sq");

    const RationalVector coords = solve_left(lift.lifted, lift.shortest);
    rep.check("vertical vector has the relation as coordinates", coords == to_rational(a));

    const Rational det = determinant(lift.lifted);
    bool replacements_ok = true;
    bool ratios_match = true;
    for (std::size_t i = 0; i < n; ++i) {
        RationalMatrix replaced = lift.lifted;
        replaced[i] = lift.shortest;
        const Rational ratio = determinant(replaced) / det;
        rep.set(idx("a", i + 1), Rational(a[i]));
        rep.set(idx("replacement_ratio", i + 1), ratio);
        ratios_match = ratios_match && ratio == Rational(a[i]);
        replacements_ok = replacements_ok && abs(ratio) != 1;
    }
    rep.check("replacement determinant ratios equal the relation coefficients", ratios_match);
    rep.check("no replacement of a lifted generator yields a basis", replacements_ok);
    rep.witnesses.emplace_back("shortest_vector", RationalMatrix{lift.shortest});
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

TheoremReport verify_delta_table(std::size_t count) {
    const auto t0 = Clock::now();
    TheoremReport rep;
    rep.lattice_id = "delta-table";
    rep.claim = "Delta constants and their improvement";
    const auto plain = vdw_delta_table(count, false);
    const auto improved = vdw_delta_table(count, true);
    for (std::size_t i = 1; i <= count; ++i) {
        const long e = static_cast<long>(i) - 4;
        Rational pw = 1;
        for (long t = 0; t < std::abs(e); ++t)
            pw *= make_rational(5, 4);
        if (e < 0)
            pw = 1 / pw;
        const Rational closed = std::max(Rational(1), pw);
        rep.set(idx("delta", i), plain.values[i - 1]);
        rep.set(idx("delta", i, "_closed"), closed);
        rep.compare(idx("Delta_", i, " closed form"), idx("delta", i), "=", idx("delta", i, "_closed"));
        rep.set(idx("delta", i, "_improved"), improved.values[i - 1]);
        if (i >= 8) {
            rep.set(idx("delta", i, "_improved_closed"), make_rational(608, 625) * pw);
            rep.compare(idx("improved Delta_", i, " closed form"), idx("delta", i, "_improved"), "=",
                        idx("delta", i, "_improved_closed"));
        }
        rep.compare(idx("improved Delta_", i, " not above the plain value"), idx("delta", i, "_improved"),
                    "<=", idx("delta", i));
    }
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

} // namespace mkz
