#include "mkz/enumeration.hpp"

#include "mkz/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <thread>

namespace mkz {

bool canonical_less(const RationalVector& a, const RationalVector& b) {
    const Rational na = norm_sq(a);
    const Rational nb = norm_sq(b);
    if (na != nb)
        return na < nb;
    return lex_less(sign_normalized(a), sign_normalized(b));
}

namespace {

struct Prepared {
    RationalMatrix basis; // LLL-reduced
    IntMatrix transform;  // basis = transform * lattice.basis()
    GSOData gso;
};

Prepared prepare(const Lattice& lattice) {
    auto red = lll(lattice);
    Prepared p;
    p.gso = gram_schmidt(red.basis);
    p.basis = std::move(red.basis);
    p.transform = std::move(red.transform);
    return p;
}

struct Leaf {
    IntVector x;
    Rational value; // squared norm or squared distance
};

// Depth-first Fincke-Pohst enumeration of integer vectors x with
//   sum_j (x_j - c_j)^2 B_j <= radius,  c_j = t_j - sum_{i>j} x_i mu_{i,j}.
// Without a target the zero vector is excluded and only one vector of each
// +/- pair is visited (topmost nonzero coefficient positive).
class Enumerator {
public:
    Enumerator(const GSOData& gso, const RationalVector* target, std::atomic<std::uint64_t>& nodes,
               std::uint64_t budget, Rational radius, bool shrink)
        : gso_(gso), target_(target), nodes_(nodes), budget_(budget), radius_(std::move(radius)),
          shrink_(shrink), n_(gso.norms_sq.size()), x_(n_, Integer(0)) {}

    // Admissible values of the top coefficient, in visiting order.
    std::vector<Integer> top_candidates() {
        std::vector<Integer> out;
        const std::size_t j = n_ - 1;
        const Rational c = center(j);
        for_each_candidate(j, c, Rational(0), [&](const Integer& v, const Rational&) {
            out.push_back(v);
        });
        return out;
    }

    void run_from_top(const Integer& top) {
        const std::size_t j = n_ - 1;
        const Rational c = center(j);
        const Rational d = Rational(top) - c;
        const Rational rho = d * d * gso_.norms_sq[j];
        if (rho > radius_)
            return;
        count_node();
        x_[j] = top;
        if (j == 0)
            leaf(rho);
        else
            descend(j - 1, rho);
        x_[j] = 0;
    }

    std::vector<Leaf>& leaves() { return leaves_; }
    const Rational& radius() const { return radius_; }

private:
    Rational center(std::size_t j) const {
        Rational c = target_ ? (*target_)[j] : Rational(0);
        for (std::size_t i = j + 1; i < n_; ++i)
            if (x_[i] != 0)
                c -= x_[i] * gso_.mu[i][j];
        return c;
    }

    bool higher_all_zero(std::size_t j) const {
        for (std::size_t i = j + 1; i < n_; ++i)
            if (x_[i] != 0)
                return false;
        return true;
    }

    void count_node() {
        if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_)
            throw BudgetExceeded("enumeration node budget exceeded");
    }

    template <class F>
    void for_each_candidate(std::size_t j, const Rational& c, const Rational& rho, F&& f) {
        const Rational& bj = gso_.norms_sq[j];
        bool restrict_sign = !target_ && higher_all_zero(j);
        const Integer lower = restrict_sign ? Integer(j == 0 ? 1 : 0) : Integer(0);
        const Integer start = floor_rational(c);
        for (Integer v = start;; --v) {
            if (restrict_sign && v < lower)
                break;
            const Rational d = Rational(v) - c;
            const Rational r = rho + d * d * bj;
            if (r > radius_)
                break;
            f(v, r);
        }
        Integer v = start + 1;
        if (restrict_sign && v < lower)
            v = lower;
        for (;; ++v) {
            const Rational d = Rational(v) - c;
            const Rational r = rho + d * d * bj;
            if (r > radius_)
                break;
            f(v, r);
        }
    }

    void descend(std::size_t j, const Rational& rho) {
        const Rational c = center(j);
        for_each_candidate(j, c, rho, [&](const Integer& v, const Rational& r) {
            count_node();
            x_[j] = v;
            if (j == 0)
                leaf(r);
            else
                descend(j - 1, r);
            x_[j] = 0;
        });
    }

    void leaf(const Rational& value) {
        if (!target_ && is_zero_x())
            return;
        if (shrink_ && value < radius_) {
            radius_ = value;
            leaves_.clear();
        }
        leaves_.push_back(Leaf{x_, value});
    }

    bool is_zero_x() const {
        return std::all_of(x_.begin(), x_.end(), [](const Integer& v) { return v == 0; });
    }

    const GSOData& gso_;
    const RationalVector* target_;
    std::atomic<std::uint64_t>& nodes_;
    std::uint64_t budget_;
    Rational radius_;
    bool shrink_;
    std::size_t n_;
    IntVector x_;
    std::vector<Leaf> leaves_;
};

// Runs the enumeration, splitting the top-level coefficient values across
// workers. Returns every leaf within the final radius.
std::vector<Leaf> run_enumeration(const GSOData& gso, const RationalVector* target,
                                  const Rational& radius, bool shrink, const EnumOptions& opts) {
    std::atomic<std::uint64_t> nodes{0};
    Enumerator probe(gso, target, nodes, opts.node_budget, radius, shrink);
    const auto tops = probe.top_candidates();
    const unsigned workers =
        std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(tops.size())));

    std::vector<std::vector<Leaf>> results(workers);
    std::vector<Rational> radii(workers, radius);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            Enumerator e(gso, target, nodes, opts.node_budget, radius, shrink);
            for (std::size_t i = w; i < tops.size(); i += workers)
                e.run_from_top(tops[i]);
            radii[w] = e.radius();
            results[w] = std::move(e.leaves());
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w)
            threads.emplace_back(work, w);
        for (auto& t : threads)
            t.join();
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    Rational best = radius;
    if (shrink)
        for (const auto& r : radii)
            best = std::min(best, r);
    std::vector<Leaf> all;
    for (auto& res : results)
        for (auto& l : res)
            if (!shrink || l.value <= best)
                all.push_back(std::move(l));
    return all;
}

RationalVector target_gso_coords(const GSOData& gso, const RationalVector& target) {
    RationalVector t(gso.norms_sq.size());
    for (std::size_t j = 0; j < t.size(); ++j)
        t[j] = dot(target, gso.bstar[j]) / gso.norms_sq[j];
    return t;
}

IntVector to_original(const IntVector& x, const IntMatrix& transform) {
    const std::size_t n = transform.size();
    IntVector out(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            if (transform[i][j] != 0)
                out[j] += x[i] * transform[i][j];
    }
    return out;
}

} // namespace

VectorList enumerate_up_to(const Lattice& lattice, const Rational& bound_sq,
                           const EnumOptions& opts) {
    if (sgn(bound_sq) <= 0)
        throw PreconditionViolated("enumerate_up_to: bound must be positive");
    const Prepared p = prepare(lattice);
    auto leaves = run_enumeration(p.gso, nullptr, bound_sq, false, opts);

    struct Item {
        RationalVector v;
        IntVector coords;
        Rational norm;
    };
    std::vector<Item> items;
    items.reserve(leaves.size());
    for (auto& l : leaves) {
        RationalVector v = combine(l.x, p.basis);
        IntVector c = to_original(l.x, p.transform);
        const RationalVector normalized = sign_normalized(v);
        if (normalized != v) {
            for (auto& z : c)
                z = -z;
            v = normalized;
        }
        items.push_back(Item{std::move(v), std::move(c), std::move(l.value)});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.norm != b.norm)
            return a.norm < b.norm;
        return lex_less(a.v, b.v);
    });
    VectorList out;
    out.bound_sq = bound_sq;
    for (auto& it : items) {
        out.vectors.push_back(std::move(it.v));
        out.coords.push_back(std::move(it.coords));
        out.norms_sq.push_back(std::move(it.norm));
    }
    return out;
}

ShortestVector shortest_vector(const Lattice& lattice, const EnumOptions& opts) {
    const Prepared p = prepare(lattice);
    Rational radius = p.gso.norms_sq[0]; // |b_1|^2 of the reduced basis
    for (const auto& b : p.basis)
        radius = std::min(radius, norm_sq(b));
    auto leaves = run_enumeration(p.gso, nullptr, radius, true, opts);
    if (leaves.empty())
        throw Error("shortest_vector: enumeration found no vector (internal error)");
    RationalMatrix candidates;
    for (const auto& l : leaves)
        candidates.push_back(sign_normalized(combine(l.x, p.basis)));
    const auto best = std::min_element(candidates.begin(), candidates.end(), canonical_less);
    return ShortestVector{*best, norm_sq(*best)};
}

RationalMatrix closest_vectors_all(const Lattice& lattice, const RationalVector& target,
                                   const EnumOptions& opts) {
    if (target.size() != lattice.ambient_dim())
        throw DimensionMismatch("closest_vector: target length mismatch");
    const Prepared p = prepare(lattice);
    const RationalVector t = target_gso_coords(p.gso, target);
    if (combine(t, p.gso.bstar) != target)
        throw NotInSpan("closest_vector: target is outside the span of the lattice");

    // Babai nearest plane gives the initial radius.
    const std::size_t n = t.size();
    IntVector x(n, Integer(0));
    Rational dist = 0;
    for (std::size_t j = n; j-- > 0;) {
        Rational c = t[j];
        for (std::size_t i = j + 1; i < n; ++i)
            c -= x[i] * p.gso.mu[i][j];
        x[j] = round_nearest(c);
        const Rational d = Rational(x[j]) - c;
        dist += d * d * p.gso.norms_sq[j];
    }
    auto leaves = run_enumeration(p.gso, &t, dist, true, opts);
    RationalMatrix out;
    for (const auto& l : leaves)
        out.push_back(combine(l.x, p.basis));
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RationalVector closest_vector(const Lattice& lattice, const RationalVector& target,
                              const EnumOptions& opts) {
    return closest_vectors_all(lattice, target, opts).front();
}

MinimaReport successive_minima(const Lattice& lattice, const EnumOptions& opts) {
    const std::size_t n = lattice.rank();
    const auto red = lll(lattice);
    Rational max_norm = 0;
    Rational bound = norm_sq(red.basis[0]);
    for (const auto& b : red.basis) {
        max_norm = std::max(max_norm, norm_sq(b));
        bound = std::min(bound, norm_sq(b));
    }
    for (;;) {
        const auto list = enumerate_up_to(lattice, bound, opts);
        MinimaReport rep;
        RationalMatrix ortho; // Gram-Schmidt of the accepted witnesses
        std::vector<Rational> ortho_norms;
        for (std::size_t i = 0; i < list.size() && rep.witnesses.size() < n; ++i) {
            RationalVector r = list.vectors[i];
            for (std::size_t j = 0; j < ortho.size(); ++j)
                axpy(r, -(dot(list.vectors[i], ortho[j]) / ortho_norms[j]), ortho[j]);
            if (is_zero(r))
                continue;
            ortho_norms.push_back(norm_sq(r));
            ortho.push_back(std::move(r));
            rep.witnesses.push_back(list.vectors[i]);
            rep.minima_sq.push_back(list.norms_sq[i]);
        }
        if (rep.witnesses.size() == n)
            return rep;
        if (bound >= max_norm)
            throw Error("successive_minima: reduced basis bound insufficient (internal error)");
        bound = std::min<Rational>(bound * 2, max_norm);
    }
}

} // namespace mkz
