#include "kg/boundary.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace kg {

// Per-graph write-once cache of enumerations, keyed by (vertex, depth).
class BoundaryMemo {
public:
    std::optional<BoundarySet> get(VertexId v, const Degree& depth) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find({v, depth.coords()});
        if (it == cache_.end()) return std::nullopt;
        return it->second;
    }
    void put(VertexId v, const Degree& depth, const BoundarySet& set) {
        std::lock_guard<std::mutex> lock(mu_);
        cache_.emplace(std::make_pair(v, depth.coords()), set);
    }

private:
    std::mutex mu_;
    std::map<std::pair<VertexId, std::vector<int>>, BoundarySet> cache_;
};

std::shared_ptr<BoundaryMemo> make_boundary_memo() { return std::make_shared<BoundaryMemo>(); }

ExtDegree bp_degree(const KGraph& g, const BoundaryPath& x) {
    switch (x.body) {
        case BoundaryPath::Body::finite:
            return ExtDegree::from(x.prefix.degree);
        case BoundaryPath::Body::periodic: {
            ExtDegree d = ExtDegree::from(x.prefix.degree);
            for (int i = 0; i < g.rank(); ++i)
                if (x.cycle->degree[i] > 0) d[i] = ExtDegree::kInf;
            return d;
        }
        default:
            // Depth-capped: only the prefix is known.
            return ExtDegree::from(x.prefix.degree);
    }
}

namespace {

Path path_power(const KGraph& g, const Path& c, int t) {
    Path out = c;
    for (int i = 1; i < t; ++i) out = compose(g, out, c);
    return out;
}

Path primitive_loop(const KGraph& g, const Path& c) {
    int g0 = 0;
    for (int i = 0; i < g.rank(); ++i) g0 = std::gcd(g0, c.degree[i]);
    for (int t = g0; t >= 2; --t) {
        bool divides = true;
        for (int i = 0; i < g.rank(); ++i)
            if (c.degree[i] % t != 0) divides = false;
        if (!divides) continue;
        Degree root(g.rank());
        for (int i = 0; i < g.rank(); ++i) root[i] = c.degree[i] / t;
        Path c0 = segment(g, c, Degree::zero(g.rank()), root);
        if (source_of(g, c0) != c0.range) continue;
        if (path_power(g, c0, t) == c) return c0;
    }
    return c;
}

}  // namespace

BoundaryPath bp_canonical(const KGraph& g, const BoundaryPath& x) {
    if (x.body != BoundaryPath::Body::periodic) return x;
    Path p = x.prefix;
    Path c = *x.cycle;
    if (c.degree.is_zero()) return BoundaryPath{BoundaryPath::Body::finite, p, {}, {}};
    c = primitive_loop(g, c);
    // Absorb trailing prefix edges that match the loop's trailing edges.
    bool rolled = true;
    while (rolled && !p.word.empty()) {
        rolled = false;
        for (int i = 1; i <= g.rank() && !rolled; ++i) {
            Degree ei = Degree::unit(g.rank(), i);
            if (p.degree[i - 1] == 0 || c.degree[i - 1] == 0) continue;
            Path pe = segment(g, p, p.degree - ei, p.degree);
            Path ce = segment(g, c, c.degree - ei, c.degree);
            if (pe == ce) {
                Path body = segment(g, c, Degree::zero(g.rank()), c.degree - ei);
                p = segment(g, p, Degree::zero(g.rank()), p.degree - ei);
                c = compose(g, ce, body);
                rolled = true;
            }
        }
    }
    return BoundaryPath{BoundaryPath::Body::periodic, p, c, {}};
}

Path bp_segment(const KGraph& g, const BoundaryPath& x, const Degree& p, const Degree& q) {
    if (!leq(p, q)) throw std::invalid_argument("segment: need p <= q");
    if (!ext_leq(q, bp_degree(g, x))) {
        if (x.body == BoundaryPath::Body::truncated)
            throw std::invalid_argument("segment: beyond the truncated prefix");
        throw std::invalid_argument("segment: beyond the trajectory degree");
    }
    if (x.body != BoundaryPath::Body::periodic) return segment(g, x.prefix, p, q);
    // Unroll just enough loop copies to cover q.
    int copies = 0;
    for (int i = 0; i < g.rank(); ++i) {
        int c = x.cycle->degree[i];
        if (c == 0) continue;
        int need = q[i] - x.prefix.degree[i];
        if (need > 0) copies = std::max(copies, (need + c - 1) / c);
    }
    Path big = x.prefix;
    for (int j = 0; j < copies; ++j) big = compose(g, big, *x.cycle);
    return segment(g, big, p, q);
}

VertexId bp_vertex_at(const KGraph& g, const BoundaryPath& x, const Degree& n) {
    return bp_segment(g, x, n, n).range;
}

bool bp_equal(const KGraph& g, const BoundaryPath& x, const BoundaryPath& y) {
    BoundaryPath a = bp_canonical(g, x);
    BoundaryPath b = bp_canonical(g, y);
    if (a.body == BoundaryPath::Body::truncated || b.body == BoundaryPath::Body::truncated)
        return a.body == b.body && a.prefix == b.prefix;
    if (bp_degree(g, a) != bp_degree(g, b)) return false;
    if (a.range() != b.range()) return false;
    if (a.body == BoundaryPath::Body::finite) return a.prefix == b.prefix;
    if (b.body != BoundaryPath::Body::periodic) return false;
    if (a.prefix == b.prefix && *a.cycle == *b.cycle) return true;
    // Same degree and range but different presentations: compare a window
    // long enough that eventual periodicity forces global agreement.
    Degree window = join(a.prefix.degree, b.prefix.degree) + a.cycle->degree + b.cycle->degree;
    Degree box = ext_cap(bp_degree(g, a), window);
    return bp_segment(g, a, Degree::zero(g.rank()), box) ==
           bp_segment(g, b, Degree::zero(g.rank()), box);
}

BoundaryPath shift(const KGraph& g, const BoundaryPath& x, const Degree& m) {
    if (!ext_leq(m, bp_degree(g, x))) {
        if (x.body == BoundaryPath::Body::truncated)
            throw std::invalid_argument("shift: beyond the truncated prefix");
        throw std::invalid_argument("shift: m not below d(x)");
    }
    switch (x.body) {
        case BoundaryPath::Body::finite:
            return BoundaryPath{BoundaryPath::Body::finite,
                                segment(g, x.prefix, m, x.prefix.degree), {}, {}};
        case BoundaryPath::Body::periodic: {
            int copies = 0;
            for (int i = 0; i < g.rank(); ++i) {
                int c = x.cycle->degree[i];
                if (c == 0) continue;
                int need = m[i] - x.prefix.degree[i];
                if (need > 0) copies = std::max(copies, (need + c - 1) / c);
            }
            Path big = x.prefix;
            for (int j = 0; j < copies; ++j) big = compose(g, big, *x.cycle);
            Path tail = segment(g, big, m, big.degree);
            return bp_canonical(
                g, BoundaryPath{BoundaryPath::Body::periodic, tail, x.cycle, {}});
        }
        default: {
            Degree left(g.rank());
            for (int i = 0; i < g.rank(); ++i)
                left[i] = std::max(0, x.depth[i] - m[i]);
            return BoundaryPath{BoundaryPath::Body::truncated,
                                segment(g, x.prefix, m, x.prefix.degree), {}, left};
        }
    }
}

BoundaryPath prepend(const KGraph& g, const Path& lambda, const BoundaryPath& x) {
    if (source_of(g, lambda) != x.range())
        throw std::invalid_argument("prepend: source/range mismatch");
    BoundaryPath y = x;
    y.prefix = compose(g, lambda, x.prefix);
    if (y.body == BoundaryPath::Body::periodic) return bp_canonical(g, y);
    return y;
}

bool bp_hits(const KGraph& g, const BoundaryPath& x, const std::vector<Path>& E) {
    ExtDegree d = bp_degree(g, x);
    for (const Path& lam : E) {
        if (!ext_leq(lam.degree, d)) continue;
        if (bp_segment(g, x, Degree::zero(g.rank()), lam.degree) == lam) return true;
    }
    return false;
}

std::string bp_format(const KGraph& g, const BoundaryPath& x) {
    switch (x.body) {
        case BoundaryPath::Body::finite:
            return format_path(g, x.prefix);
        case BoundaryPath::Body::periodic:
            return format_path(g, x.prefix) + " (" + format_path(g, *x.cycle) + ")^inf";
        default:
            return format_path(g, x.prefix) + " ...";
    }
}

bool bp_less(const KGraph& g, const BoundaryPath& a, const BoundaryPath& b) {
    (void)g;
    if (a.body != b.body) return static_cast<int>(a.body) < static_cast<int>(b.body);
    if (!(a.prefix == b.prefix)) return a.prefix < b.prefix;
    if (a.body == BoundaryPath::Body::periodic && !(*a.cycle == *b.cycle))
        return *a.cycle < *b.cycle;
    return false;
}

namespace {

void sort_unique(const KGraph& g, std::vector<BoundaryPath>& v) {
    std::sort(v.begin(), v.end(),
              [&](const BoundaryPath& a, const BoundaryPath& b) { return bp_less(g, a, b); });
    v.erase(std::unique(v.begin(), v.end(),
                        [&](const BoundaryPath& a, const BoundaryPath& b) {
                            return !bp_less(g, a, b) && !bp_less(g, b, a);
                        }),
            v.end());
}

// All maximal finite paths from v; only valid when no cycle is reachable.
void enumerate_acyclic(const KGraph& g, const Path& sofar, std::vector<BoundaryPath>& out) {
    VertexId u = source_of(g, sofar);
    if (g.is_strict_sink(u)) {
        out.push_back(BoundaryPath{BoundaryPath::Body::finite, sofar, {}, {}});
        return;
    }
    for (EdgeId e : g.all_edges_at(u))
        enumerate_acyclic(g, compose(g, sofar, edge_path(g, e)), out);
}

// Rank-1 walk with on-trail cycle detection. In the tame regime every
// branch either reaches a sink or closes a deterministic loop; in the
// truncated regime exploration continues past loop closures up to the cap.
void enumerate_rank1(const KGraph& g, const Path& sofar, std::vector<VertexId>& trail,
                     bool capped, int cap, std::vector<BoundaryPath>& out) {
    VertexId u = source_of(g, sofar);
    if (g.is_strict_sink(u)) {
        out.push_back(BoundaryPath{BoundaryPath::Body::finite, sofar, {}, {}});
        return;
    }
    if (capped && static_cast<int>(sofar.word.size()) >= cap) {
        out.push_back(BoundaryPath{BoundaryPath::Body::truncated, sofar, {},
                                   Degree::uniform(1, cap)});
        return;
    }
    for (EdgeId e : g.edges_at(u, 1)) {
        VertexId w = g.edge(e).source;
        auto it = std::find(trail.begin(), trail.end(), w);
        if (it != trail.end()) {
            // Loop closed at trail position j: prefix to there, loop around.
            auto j = static_cast<std::size_t>(it - trail.begin());
            std::vector<EdgeId> pre(sofar.word.begin(), sofar.word.begin() + static_cast<long>(j));
            std::vector<EdgeId> cyc(sofar.word.begin() + static_cast<long>(j), sofar.word.end());
            cyc.push_back(e);
            Path prefix{sofar.range, pre, Degree(std::vector<int>{static_cast<int>(pre.size())})};
            Path cycle{w, cyc, Degree(std::vector<int>{static_cast<int>(cyc.size())})};
            out.push_back(bp_canonical(
                g, BoundaryPath{BoundaryPath::Body::periodic, prefix, cycle, {}}));
            if (!capped) continue;  // tame: the continuation is forced
        }
        trail.push_back(w);
        enumerate_rank1(g, compose(g, sofar, edge_path(g, e)), trail, capped, cap, out);
        trail.pop_back();
    }
}

BoundarySet enumerate_at(const KGraph& g, VertexId v, const Degree& depth) {
    BoundarySet set;
    switch (g.regime_at(v)) {
        case BoundaryRegime::acyclic: {
            enumerate_acyclic(g, vertex_path(g, v), set.paths);
            set.exact = true;
            break;
        }
        case BoundaryRegime::tame_cycles: {
            std::vector<VertexId> trail{v};
            enumerate_rank1(g, vertex_path(g, v), trail, /*capped=*/false, 0, set.paths);
            set.exact = true;
            break;
        }
        case BoundaryRegime::deterministic: {
            // One trajectory per vertex: follow the unique diagonal step
            // until the vertex sequence repeats.
            Degree ones = Degree::uniform(g.rank(), 1);
            std::vector<VertexId> seen{v};
            std::vector<Path> steps;
            VertexId at = v;
            while (true) {
                auto diag = paths_of_degree(g, at, ones);
                if (diag.size() != 1)
                    throw std::logic_error("deterministic regime: diagonal step not unique");
                steps.push_back(diag.front());
                at = source_of(g, diag.front());
                auto it = std::find(seen.begin(), seen.end(), at);
                if (it != seen.end()) {
                    auto j = static_cast<std::size_t>(it - seen.begin());
                    Path prefix = vertex_path(g, v);
                    for (std::size_t t = 0; t < j; ++t) prefix = compose(g, prefix, steps[t]);
                    Path cycle = steps[j];
                    for (std::size_t t = j + 1; t < steps.size(); ++t)
                        cycle = compose(g, cycle, steps[t]);
                    set.paths.push_back(bp_canonical(
                        g, BoundaryPath{BoundaryPath::Body::periodic, prefix, cycle, {}}));
                    break;
                }
                seen.push_back(at);
            }
            set.exact = true;
            break;
        }
        case BoundaryRegime::truncated: {
            if (g.rank() == 1) {
                std::vector<VertexId> trail{v};
                enumerate_rank1(g, vertex_path(g, v), trail, /*capped=*/true, depth[0],
                                set.paths);
            } else {
                for (const Path& p : paths_le(g, v, depth)) {
                    if (g.is_strict_sink(source_of(g, p)))
                        set.paths.push_back(BoundaryPath{BoundaryPath::Body::finite, p, {}, {}});
                    else
                        set.paths.push_back(
                            BoundaryPath{BoundaryPath::Body::truncated, p, {}, depth});
                }
            }
            set.exact = false;
            break;
        }
    }
    sort_unique(g, set.paths);
    return set;
}

}  // namespace

Degree default_boundary_depth(const KGraph& g) { return Degree::uniform(g.rank(), 4); }

BoundarySet boundary_paths(const KGraph& g, VertexId v, const Degree& depth) {
    if (auto hit = g.boundary_memo().get(v, depth)) return *hit;
    BoundarySet set = enumerate_at(g, v, depth);
    g.boundary_memo().put(v, depth, set);
    return set;
}

BoundarySet boundary_paths(const KGraph& g, VertexId v) {
    return boundary_paths(g, v, default_boundary_depth(g));
}

KGraph omega(int rank, const Degree& m) {
    if (rank < 1) throw std::invalid_argument("omega: rank must be positive");
    if (m.rank() != rank) throw std::invalid_argument("omega: degree rank mismatch");

    Skeleton sk;
    sk.rank = rank;
    sk.name = "omega";

    auto vname = [&](const Degree& q) {
        std::string s = "x";
        for (int i = 0; i < rank; ++i) s += (i ? "_" : "") + std::to_string(q[i]);
        return s;
    };
    std::vector<Degree> grid = degrees_leq(m);
    for (const Degree& q : grid) sk.vertices.push_back(vname(q));

    auto ename = [&](int color, const Degree& q) {
        return "c" + std::to_string(color) + "_" + vname(q).substr(1);
    };
    for (const Degree& q : grid) {
        for (int i = 1; i <= rank; ++i) {
            Degree q2 = q + Degree::unit(rank, i);
            if (!leq(q2, m)) continue;
            sk.edges.push_back(SkeletonEdge{ename(i, q), i, vname(q), vname(q2)});
        }
    }
    for (const Degree& q : grid) {
        for (int i = 1; i <= rank; ++i) {
            for (int j = i + 1; j <= rank; ++j) {
                Degree qi = q + Degree::unit(rank, i);
                Degree qj = q + Degree::unit(rank, j);
                if (!leq(qi + Degree::unit(rank, j), m)) continue;
                sk.squares.push_back(SkeletonSquare{ename(i, q), ename(j, qi), ename(j, q),
                                                    ename(i, qj)});
            }
        }
    }
    return validate(sk);
}

KGraph omega(const OmegaSpec& spec) { return omega(spec.rank, spec.cap); }

}  // namespace kg
