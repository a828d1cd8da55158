#include "kg/align.hpp"

#include <algorithm>
#include <stdexcept>

#include "kg/boundary.hpp"

namespace kg {

std::vector<Path> mce(const KGraph& g, const Path& mu, const Path& nu) {
    std::vector<Path> out;
    if (mu.range != nu.range) return out;
    Degree top = join(mu.degree, nu.degree);
    // Every common extension of degree d(mu) v d(nu) extends mu, so it
    // suffices to range over the tails at s(mu) and filter on nu.
    for (const Path& alpha : paths_of_degree(g, source_of(g, mu), top - mu.degree)) {
        Path lam = compose(g, mu, alpha);
        if (segment(g, lam, Degree::zero(g.rank()), nu.degree) != nu) continue;
        out.push_back(lam);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<Path, Path>> min_extensions(const KGraph& g, const Path& mu,
                                                  const Path& nu) {
    std::vector<std::pair<Path, Path>> out;
    for (const Path& lam : mce(g, mu, nu)) {
        Path alpha = segment(g, lam, mu.degree, lam.degree);
        Path beta = segment(g, lam, nu.degree, lam.degree);
        out.emplace_back(alpha, beta);
    }
    return out;
}

std::vector<Path> ext(const KGraph& g, const Path& lambda, const std::vector<Path>& E) {
    for (const Path& mu : E)
        if (mu.range != lambda.range)
            throw std::invalid_argument("ext: set members must share the range of lambda");
    std::vector<Path> out;
    for (const Path& mu : E) {
        for (const Path& nu : mce(g, lambda, mu)) {
            Path tail = segment(g, nu, lambda.degree, nu.degree);
            out.push_back(tail);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ExhaustiveCheck is_exhaustive(const KGraph& g, const std::vector<Path>& E, FeStrategy strategy,
                              const Degree& bound) {
    if (E.empty()) throw std::invalid_argument("is_exhaustive: empty set");
    VertexId v = E.front().range;
    for (const Path& p : E)
        if (p.range != v)
            throw std::invalid_argument("is_exhaustive: members must share one range");

    Degree b = bound.rank() == g.rank() ? bound : Degree::uniform(g.rank(), 4);

    bool oracle_allowed = strategy != FeStrategy::bounded_search;
    bool oracle_available = boundary_exact_at(g, v);
    if (strategy == FeStrategy::boundary_oracle && !oracle_available)
        throw std::invalid_argument("is_exhaustive: trajectory enumeration is not exact here");

    // A path with empty MCE against every member refutes exhaustiveness
    // outright; search smallest-first so counterexamples are minimal.
    auto find_witness = [&]() -> std::optional<Path> {
        for (const Path& mu : paths_by_total(g, v, b.total())) {
            if (!leq(mu.degree, b)) continue;
            bool bad = true;
            for (const Path& lam : E)
                if (!mce(g, mu, lam).empty()) {
                    bad = false;
                    break;
                }
            if (bad) return mu;
        }
        return std::nullopt;
    };

    if (oracle_allowed && oracle_available) {
        BoundarySet bs = boundary_paths(g, v);
        for (const BoundaryPath& x : bs.paths) {
            if (!bp_hits(g, x, E)) {
                // Exactly refuted: every trajectory must begin in E.
                ExhaustiveCheck res;
                res.verdict = Verdict::make_fails("boundary-oracle");
                res.witness = find_witness();
                res.detail = "avoiding trajectory " + bp_format(g, x);
                return res;
            }
        }
        return {Verdict::make_holds("boundary-oracle"), std::nullopt, ""};
    }

    if (auto w = find_witness()) {
        ExhaustiveCheck res;
        res.verdict = Verdict::make_fails("bounded-search");
        res.witness = w;
        return res;
    }
    return {Verdict::make_unknown("bounded-search"), std::nullopt,
            "no counterexample below degree " + b.to_string()};
}

std::vector<FiniteExhaustiveSet> fe_family(const KGraph& g, VertexId v, const Degree& cap) {
    std::vector<Path> pool;
    for (const Degree& m : degrees_leq(cap))
        for (const Path& p : paths_of_degree(g, v, m)) pool.push_back(p);
    std::sort(pool.begin(), pool.end());

    std::vector<FiniteExhaustiveSet> out;
    if (pool.size() > 16)
        throw std::invalid_argument("fe_family: pool too large to enumerate subsets");
    for (std::uint32_t mask = 1; mask < (1u << pool.size()); ++mask) {
        std::vector<Path> e;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (mask & (1u << i)) e.push_back(pool[i]);
        ExhaustiveCheck chk = is_exhaustive(g, e, FeStrategy::automatic);
        if (chk.verdict.holds())
            out.push_back(FiniteExhaustiveSet{v, e, FeCertificate::boundary_oracle});
    }
    return out;
}

FiniteExhaustiveSet paths_le_fe(const KGraph& g, VertexId v, const Degree& n) {
    if (!g.locally_convex())
        throw std::invalid_argument("paths_le_fe: graph is not locally convex");
    return FiniteExhaustiveSet{v, paths_le(g, v, n), FeCertificate::by_construction};
}

}  // namespace kg
