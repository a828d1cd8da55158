#include "kg/cofinality.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace kg {

std::vector<VertexId> reachable_from(const KGraph& g, VertexId v) {
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    std::deque<VertexId> q{v};
    seen[static_cast<std::size_t>(v)] = true;
    while (!q.empty()) {
        VertexId u = q.front();
        q.pop_front();
        for (EdgeId e : g.all_edges_at(u)) {
            VertexId w = g.edge(e).source;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                q.push_back(w);
            }
        }
    }
    std::vector<VertexId> out;
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        if (seen[static_cast<std::size_t>(u)]) out.push_back(u);
    return out;
}

namespace {

bool contains(const std::vector<VertexId>& sorted, VertexId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

bool subset(const std::set<VertexId>& a, const std::vector<VertexId>& sorted_b) {
    for (VertexId v : a)
        if (!contains(sorted_b, v)) return false;
    return true;
}

// Vertices a trajectory certainly visits: along the prefix, plus one loop
// pass for periodic bodies.
std::set<VertexId> visited_vertices(const KGraph& g, const BoundaryPath& x) {
    std::set<VertexId> out;
    VertexId at = x.prefix.range;
    out.insert(at);
    for (EdgeId e : x.prefix.word) {
        at = g.edge(e).source;
        out.insert(at);
    }
    if (x.body == BoundaryPath::Body::periodic)
        for (EdgeId e : x.cycle->word) {
            at = g.edge(e).source;
            out.insert(at);
        }
    return out;
}

}  // namespace

PairResult cofinality_lc_exact(const KGraph& g, VertexId v, VertexId w) {
    if (!g.locally_convex())
        throw std::invalid_argument("cofinality_lc_exact: graph is not locally convex");
    std::vector<VertexId> rv = reachable_from(g, v);
    Degree ones = Degree::uniform(g.rank(), 1);

    std::set<VertexId> frontier{w};
    std::set<std::set<VertexId>> seen{frontier};
    int t = 0;
    while (true) {
        if (subset(frontier, rv)) {
            PairResult res;
            res.verdict = Verdict::make_holds("lc-exact");
            res.le_cert_n = Degree::uniform(g.rank(), t);
            res.fe_cert = paths_le_fe(g, w, *res.le_cert_n);
            for (const Path& p : res.fe_cert->paths)
                if (!contains(rv, source_of(g, p)))
                    throw std::logic_error("lc-exact certificate failed re-verification");
            return res;
        }
        std::set<VertexId> next;
        for (VertexId u : frontier)
            for (const Path& p : paths_le(g, u, ones)) next.insert(source_of(g, p));
        ++t;
        if (!seen.insert(next).second) {
            PairResult res;
            res.verdict = Verdict::make_fails("lc-exact");
            res.trapped.assign(next.begin(), next.end());
            res.note = "source-set iteration cycles without entering R(v)";
            // Attach an avoiding trajectory when one is visible from w.
            for (const BoundaryPath& x : boundary_paths(g, w).paths) {
                if (!x.exact_member()) continue;
                std::set<VertexId> vis = visited_vertices(g, x);
                bool hits = false;
                for (VertexId u : vis)
                    if (contains(rv, u)) hits = true;
                if (!hits) {
                    res.avoiding = x;
                    break;
                }
            }
            return res;
        }
        frontier = std::move(next);
    }
}

BoundaryOracleResult cofinality_boundary_oracle(const KGraph& g, VertexId v) {
    std::vector<VertexId> rv = reachable_from(g, v);
    bool any_unknown = false;
    for (VertexId w = 0; w < g.vertex_count(); ++w) {
        BoundarySet bs = boundary_paths(g, w);
        for (const BoundaryPath& x : bs.paths) {
            std::set<VertexId> vis = visited_vertices(g, x);
            bool hits = false;
            for (VertexId u : vis)
                if (contains(rv, u)) hits = true;
            if (hits) continue;
            if (x.exact_member())
                return {Verdict::make_fails("boundary-oracle"), x,
                        "trajectory avoids R(" + g.vertex_name(v) + ")"};
            any_unknown = true;
        }
    }
    if (any_unknown)
        return {Verdict::make_unknown("boundary-oracle"), std::nullopt,
                "a truncation avoids R(v) to its full depth"};
    // Every enumerated trajectory hits R(v) inside its visible window. That
    // decides the question when enumeration is exact, when rank-1
    // truncations cover every trajectory prefix, or trivially when R(v) is
    // everything.
    bool rv_all = static_cast<int>(rv.size()) == g.vertex_count();
    if (boundary_exact(g) || g.rank() == 1 || rv_all)
        return {Verdict::make_holds("boundary-oracle"), std::nullopt, ""};
    return {Verdict::make_unknown("boundary-oracle"), std::nullopt,
            "hits observed but enumeration may miss trajectory prefixes"};
}

namespace {

// Greatest subset of the complement of R(v) every certified demand of which
// points back inside; mirrors the trapped-set construction. Only meaningful
// when the involved trajectory sets are exact.
std::vector<VertexId> trapped_set(const KGraph& g, VertexId v, const Degree& fe_cap) {
    std::vector<VertexId> rv = reachable_from(g, v);
    std::set<VertexId> K;
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        if (!contains(rv, u)) K.insert(u);
    bool changed = true;
    while (changed && !K.empty()) {
        changed = false;
        for (auto it = K.begin(); it != K.end();) {
            VertexId u = *it;
            bool drop = false;
            // Predecessor closure: a vertex outside K reaching u expels u.
            for (VertexId p = 0; p < g.vertex_count(); ++p)
                if (!K.count(p) && contains(g.reachable(p), u) && p != u) drop = true;
            if (!drop && boundary_exact_at(g, u)) {
                for (const FiniteExhaustiveSet& fe : fe_family(g, u, fe_cap)) {
                    bool meets = false;
                    for (const Path& a : fe.paths)
                        if (K.count(source_of(g, a))) meets = true;
                    if (!meets) {
                        drop = true;
                        break;
                    }
                }
            }
            if (drop) {
                it = K.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return {K.begin(), K.end()};
}

}  // namespace

CofinalityReport check_cofinality(const KGraph& g, int bound) {
    CofinalityReport rep;
    bool any_fail = false, any_unknown = false;
    Degree fe_cap = Degree::uniform(g.rank(), 1);

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<VertexId> rv = reachable_from(g, v);
        for (VertexId w = 0; w < g.vertex_count(); ++w) {
            PairResult res;
            if (g.locally_convex()) {
                res = cofinality_lc_exact(g, v, w);
            } else {
                res.verdict = Verdict::make_unknown("bounded-search");
                for (int t = 0; t <= bound && !res.verdict.holds(); ++t) {
                    std::vector<Path> cand = paths_le(g, w, Degree::uniform(g.rank(), t));
                    if (cand.empty()) continue;
                    bool sources_ok = true;
                    for (const Path& p : cand)
                        if (!contains(rv, source_of(g, p))) sources_ok = false;
                    if (!sources_ok) continue;
                    ExhaustiveCheck chk = is_exhaustive(g, cand, FeStrategy::automatic);
                    if (chk.verdict.holds()) {
                        res.verdict = Verdict::make_holds("le-set");
                        res.le_cert_n = Degree::uniform(g.rank(), t);
                        res.fe_cert = FiniteExhaustiveSet{w, cand, FeCertificate::boundary_oracle};
                    }
                }
                if (!res.verdict.holds()) {
                    // Counterexample search: an avoiding trajectory from w,
                    // or a trapped set containing w when oracles are exact.
                    for (const BoundaryPath& x : boundary_paths(g, w).paths) {
                        if (!x.exact_member()) continue;
                        std::set<VertexId> vis = visited_vertices(g, x);
                        bool hits = false;
                        for (VertexId u : vis)
                            if (contains(rv, u)) hits = true;
                        if (!hits) {
                            res.verdict = Verdict::make_fails("avoiding-trajectory");
                            res.avoiding = x;
                            break;
                        }
                    }
                    if (!res.verdict.fails() && boundary_exact(g)) {
                        std::vector<VertexId> K = trapped_set(g, v, fe_cap);
                        if (std::binary_search(K.begin(), K.end(), w)) {
                            res.verdict = Verdict::make_fails("trapped-set");
                            res.trapped = K;
                        }
                    }
                }
            }
            if (res.verdict.fails()) any_fail = true;
            if (res.verdict.unknown()) any_unknown = true;
            rep.pairs.emplace(std::make_pair(v, w), std::move(res));
        }
    }
    if (any_fail)
        rep.verdict = Verdict::make_fails("pairwise");
    else if (any_unknown)
        rep.verdict = Verdict::make_unknown("pairwise");
    else
        rep.verdict = Verdict::make_holds("pairwise");
    return rep;
}

CofinalityReport check_cofinality(const KGraph& g) { return check_cofinality(g, 6); }

std::int64_t diagonal_position(std::int64_t m, std::int64_t n) {
    if (m < 1 || n < 1) throw std::invalid_argument("diagonal_position: inputs must be >= 1");
    return (m + n - 1) * (m + n - 2) / 2 + m;
}

std::pair<std::int64_t, std::int64_t> diagonal_unposition(std::int64_t l) {
    if (l < 1) throw std::invalid_argument("diagonal_unposition: input must be >= 1");
    std::int64_t s = 2;
    while ((s)*(s - 1) / 2 < l) ++s;  // first s with T(s+1) >= l, T(s) = (s-1)(s-2)/2
    std::int64_t base = (s - 1) * (s - 2) / 2;
    std::int64_t m = l - base;
    return {m, s - m};
}

std::vector<Path> xn_paths(const KGraph& g, VertexId w, int n) {
    if (g.rank() != 1) throw std::invalid_argument("xn_paths: requires rank 1");
    if (n < 0) throw std::invalid_argument("xn_paths: negative bound");
    std::vector<Path> out;
    for (int len = 0; len <= n; ++len) {
        for (const Path& p : paths_of_degree(g, w, Degree(std::vector<int>{len}))) {
            // Every vertex of a finite graph receives finitely many edges, so
            // the receiver clause is automatic; short paths must end where
            // nothing is emitted.
            if (len < n && !g.is_strict_sink(source_of(g, p))) continue;
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

PairResult check_cofinality_digraph(const KGraph& g, VertexId v, VertexId w) {
    if (g.rank() != 1) throw std::invalid_argument("check_cofinality_digraph: requires rank 1");
    std::vector<VertexId> rv = reachable_from(g, v);
    std::set<std::set<VertexId>> seen;
    for (int n = 0;; ++n) {
        std::vector<Path> xn = xn_paths(g, w, n);
        std::set<VertexId> sources;
        for (const Path& p : xn) sources.insert(source_of(g, p));
        if (subset(sources, rv)) {
            PairResult res;
            res.verdict = Verdict::make_holds("digraph-exact");
            res.le_cert_n = Degree(std::vector<int>{n});
            res.fe_cert = FiniteExhaustiveSet{w, xn, FeCertificate::by_construction};
            return res;
        }
        if (!seen.insert(sources).second) {
            PairResult res;
            res.verdict = Verdict::make_fails("digraph-exact");
            res.trapped.assign(sources.begin(), sources.end());
            return res;
        }
    }
}

TrappedTrajectory build_boundary_in_K(const KGraph& g, const std::vector<VertexId>& K_in,
                                      VertexId v, int steps, const Degree& fe_cap) {
    std::vector<VertexId> K = K_in;
    std::sort(K.begin(), K.end());
    K.erase(std::unique(K.begin(), K.end()), K.end());
    if (!std::binary_search(K.begin(), K.end(), v))
        throw std::invalid_argument("build_boundary_in_K: start vertex not in K");

    std::map<VertexId, std::vector<FiniteExhaustiveSet>> family;
    auto family_at = [&](VertexId u) -> const std::vector<FiniteExhaustiveSet>& {
        auto it = family.find(u);
        if (it == family.end()) {
            if (!boundary_exact_at(g, u))
                throw std::invalid_argument(
                    "build_boundary_in_K: exhaustive-set certification is not exact at " +
                    g.vertex_name(u));
            it = family.emplace(u, fe_family(g, u, fe_cap)).first;
        }
        return it->second;
    };

    // Hypothesis checks against the certified families. (1): every certified
    // demand at a K-vertex has a source back in K. (2): predecessors of
    // K-vertices are in K.
    for (VertexId u : K) {
        for (const FiniteExhaustiveSet& fe : family_at(u)) {
            bool meets = false;
            for (const Path& a : fe.paths)
                if (std::binary_search(K.begin(), K.end(), source_of(g, a))) meets = true;
            if (!meets)
                throw std::invalid_argument(
                    "build_boundary_in_K: a certified demand at " + g.vertex_name(u) +
                    " escapes K");
        }
    }
    for (VertexId p = 0; p < g.vertex_count(); ++p) {
        if (std::binary_search(K.begin(), K.end(), p)) continue;
        for (VertexId u : K)
            if (contains(g.reachable(p), u))
                throw std::invalid_argument(
                    "build_boundary_in_K: K is not closed under predecessors (" +
                    g.vertex_name(p) + " reaches " + g.vertex_name(u) + ")");
    }

    TrappedTrajectory out;
    std::vector<Path> lambda{vertex_path(g, v)};  // lambda[l-1] is stage l
    out.stages.push_back(lambda.front());

    for (int l = 1; l <= steps; ++l) {
        auto [il, jl] = diagonal_unposition(l);
        Path cur = lambda.back();
        Path base = lambda.at(static_cast<std::size_t>(il - 1));
        const auto& fam = family_at(source_of(g, base));
        if (jl > static_cast<std::int64_t>(fam.size())) {
            lambda.push_back(cur);  // demand index beyond the finite family
            out.stages.push_back(cur);
            continue;
        }
        const FiniteExhaustiveSet& demand = fam.at(static_cast<std::size_t>(jl - 1));
        Path mid = segment(g, cur, base.degree, cur.degree);
        std::vector<Path> choices = ext(g, mid, demand.paths);
        std::optional<Path> pick;
        for (const Path& a : choices)
            if (std::binary_search(K.begin(), K.end(), source_of(g, a))) {
                pick = a;
                break;
            }
        if (!pick)
            throw std::runtime_error("build_boundary_in_K: no extension stays in K at stage " +
                                     std::to_string(l));
        Path next = compose(g, cur, *pick);
        lambda.push_back(next);
        out.stages.push_back(next);
    }

    // Every visited position stays in K.
    const Path& fin = lambda.back();
    for (const Degree& nn : degrees_leq(fin.degree))
        if (!std::binary_search(K.begin(), K.end(), segment(g, fin, nn, nn).range))
            throw std::logic_error("build_boundary_in_K: produced prefix leaves K");

    if (g.is_strict_sink(source_of(g, fin)))
        out.path = BoundaryPath{BoundaryPath::Body::finite, fin, {}, {}};
    else
        out.path = BoundaryPath{BoundaryPath::Body::truncated, fin, {}, fin.degree};
    return out;
}

TrappedTrajectory build_boundary_in_K(const KGraph& g, const std::vector<VertexId>& K,
                                      VertexId v, int steps) {
    return build_boundary_in_K(g, K, v, steps, Degree::uniform(g.rank(), 1));
}

}  // namespace kg
