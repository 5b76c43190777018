#include "mkz/reduction.hpp"

#include <algorithm>

namespace mkz {

std::string to_string(ReductionKind kind) {
    switch (kind) {
    case ReductionKind::Minkowski:
        return "minkowski";
    case ReductionKind::KZ:
        return "kz";
    case ReductionKind::LLL:
        return "lll";
    }
    return "unknown";
}

Rational ReductionResult::max_norm_sq() const {
    Rational m = 0;
    for (const auto& b : basis)
        m = std::max(m, norm_sq(b));
    return m;
}

namespace {

Rational max_basis_norm(const RationalMatrix& basis) {
    Rational m = 0;
    for (const auto& b : basis)
        m = std::max(m, norm_sq(b));
    return m;
}

} // namespace

ReductionResult minkowski_reduce(const Lattice& lattice, const EnumOptions& opts) {
    const std::size_t n = lattice.rank();
    Rational bound = max_basis_norm(lll(lattice).basis);
    VectorList pool = enumerate_up_to(lattice, bound, opts);

    ReductionResult res;
    res.kind = ReductionKind::Minkowski;
    IntMatrix chosen;
    for (std::size_t i = 0; i < n; ++i) {
        for (;;) {
            std::size_t found = pool.size();
            std::size_t ties = 0;
            for (std::size_t idx = 0; idx < pool.size(); ++idx) {
                if (found < pool.size() && pool.norms_sq[idx] != pool.norms_sq[found])
                    break;
                IntMatrix trial = chosen;
                trial.push_back(pool.coords[idx]);
                if (!coordinates_primitive(trial))
                    continue;
                if (found == pool.size())
                    found = idx;
                ++ties;
            }
            if (found < pool.size()) {
                chosen.push_back(pool.coords[found]);
                res.basis.push_back(pool.vectors[found]);
                res.steps.push_back(StepRecord{pool.vectors[found], pool.norms_sq[found], ties});
                break;
            }
            bound *= 2;
            pool = enumerate_up_to(lattice, bound, opts);
        }
    }
    res.transform = std::move(chosen);
    return res;
}

KZStep kz_step(const Lattice& lattice, const RationalMatrix& prefix, const EnumOptions& opts) {
    const ProjectedLattice proj = prefix.empty()
                                      ? ProjectedLattice{lattice, lattice.basis()}
                                      : project_orthogonal_with_lifts(lattice, prefix);
    KZStep step;
    step.projected_min_sq = shortest_vector(proj.lattice, opts).norm_sq;
    const VectorList minimizers = enumerate_up_to(proj.lattice, step.projected_min_sq, opts);

    RationalMatrix candidates;
    for (std::size_t m = 0; m < minimizers.size(); ++m) {
        const RationalVector y0 = combine(minimizers.coords[m], proj.completion);
        if (prefix.empty()) {
            candidates.push_back(sign_normalized(y0));
            continue;
        }
        // Lifts are y0 - u for u in the prefix lattice; the shortest ones
        // have u closest to the component of y0 inside span(prefix).
        const RationalVector inside = sub(y0, minimizers.vectors[m]);
        const Lattice prefix_lattice(prefix);
        for (const auto& u : closest_vectors_all(prefix_lattice, inside, opts))
            candidates.push_back(sign_normalized(sub(y0, u)));
    }
    std::sort(candidates.begin(), candidates.end(), canonical_less);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    step.full_min_sq = norm_sq(candidates.front());
    for (auto& c : candidates) {
        if (norm_sq(c) != step.full_min_sq)
            break;
        step.candidates.push_back(std::move(c));
    }
    return step;
}

ReductionResult kz_reduce(const Lattice& lattice, const EnumOptions& opts) {
    const std::size_t n = lattice.rank();
    ReductionResult res;
    res.kind = ReductionKind::KZ;
    RationalMatrix prefix;
    for (std::size_t i = 0; i < n; ++i) {
        KZStep step = kz_step(lattice, prefix, opts);
        prefix.push_back(step.candidates.front());
        res.steps.push_back(StepRecord{step.candidates.front(), step.full_min_sq, step.candidates.size()});
    }
    res.basis = prefix;
    for (const auto& b : res.basis)
        res.transform.push_back(integer_coordinates(lattice, b));
    return res;
}

namespace {

struct BasisSearch {
    const IntMatrix& coords;
    std::size_t rank;
    std::uint64_t node_cap;
    std::uint64_t nodes = 0;
    bool capped = false;
    std::vector<std::size_t> picked;

    bool run(const std::vector<std::size_t>& candidates, std::size_t start, IntMatrix& chosen) {
        if (chosen.size() == rank)
            return true;
        const std::size_t need = rank - chosen.size();
        for (std::size_t k = start; k + need <= candidates.size(); ++k) {
            if (++nodes > node_cap) {
                capped = true;
                return false;
            }
            chosen.push_back(coords[candidates[k]]);
            if (coordinates_primitive(chosen)) {
                picked.push_back(candidates[k]);
                if (run(candidates, k + 1, chosen))
                    return true;
                picked.pop_back();
            }
            chosen.pop_back();
            if (capped)
                return false;
        }
        return false;
    }
};

bool generates_lattice(const IntMatrix& coords, std::size_t rank) {
    const auto h = hnf(coords).h;
    Integer index = 1;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < h.size() && i < rank; ++i) {
        const auto pivot = std::find_if(h[i].begin(), h[i].end(),
                                        [](const Integer& x) { return x != 0; });
        if (pivot == h[i].end())
            break;
        ++nonzero;
        index *= *pivot;
    }
    return nonzero == rank && index == 1;
}

} // namespace

ShortestBasisReport shortest_basis(const Lattice& lattice, const ShortestBasisOptions& opts) {
    const std::size_t n = lattice.rank();
    const auto kz = kz_reduce(lattice, opts.enumeration);
    const Rational upper = kz.max_norm_sq();

    ShortestBasisReport rep;
    rep.basis = kz.basis;
    rep.max_norm_sq = upper;
    rep.search_bound = upper;

    const VectorList pool = enumerate_up_to(lattice, upper, opts.enumeration);
    rep.pool_size = pool.size();
    if (pool.size() > opts.pool_cap) {
        rep.certified = false;
        return rep;
    }

    std::vector<Rational> thresholds;
    for (const auto& nsq : pool.norms_sq)
        if (nsq < upper && (thresholds.empty() || thresholds.back() != nsq))
            thresholds.push_back(nsq);

    for (const auto& t : thresholds) {
        std::vector<std::size_t> candidates;
        IntMatrix sub_coords;
        for (std::size_t i = 0; i < pool.size() && pool.norms_sq[i] <= t; ++i) {
            candidates.push_back(i);
            sub_coords.push_back(pool.coords[i]);
        }
        if (candidates.size() < n || !generates_lattice(sub_coords, n))
            continue;
        BasisSearch search{pool.coords, n, opts.search_node_cap, 0, false, {}};
        IntMatrix chosen;
        const bool found = search.run(candidates, 0, chosen);
        rep.search_nodes += search.nodes;
        if (found) {
            rep.basis.clear();
            for (auto idx : search.picked)
                rep.basis.push_back(pool.vectors[idx]);
            rep.max_norm_sq = t;
            rep.search_bound = t;
            rep.certified = true;
            return rep;
        }
        if (search.capped) {
            rep.certified = false;
            return rep;
        }
    }
    rep.certified = true;
    return rep;
}

DeltaTable vdw_delta_table(std::size_t count, bool use_improvements) {
    if (count == 0)
        throw PreconditionViolated("delta table needs at least one entry");
    DeltaTable t;
    Rational sum = 0;
    for (std::size_t k = 1; k <= count; ++k) {
        Rational d = k == 1 ? Rational(1) : std::max<Rational>(Rational(1), (sum + 1) / 4);
        bool improved = false;
        if (use_improvements && (k == 6 || k == 7)) {
            d = make_rational(static_cast<long>(k), 4);
            improved = true;
        }
        sum += d;
        t.values.push_back(d);
        t.improved.push_back(improved);
    }
    return t;
}

} // namespace mkz
