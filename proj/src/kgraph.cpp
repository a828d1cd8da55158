#include "kg/kgraph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "kg/align.hpp"
#include "kg/path.hpp"

namespace kg {

std::shared_ptr<BoundaryMemo> make_boundary_memo();  // boundary.cpp

std::optional<VertexId> KGraph::find_vertex(const std::string& id) const {
    auto it = std::lower_bound(vertex_names_.begin(), vertex_names_.end(), id);
    if (it != vertex_names_.end() && *it == id)
        return static_cast<VertexId>(it - vertex_names_.begin());
    return std::nullopt;
}

std::optional<EdgeId> KGraph::find_edge(const std::string& id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Edge& e, const std::string& s) { return e.id < s; });
    if (it != edges_.end() && it->id == id) return static_cast<EdgeId>(it - edges_.begin());
    return std::nullopt;
}

std::vector<EdgeId> KGraph::all_edges_at(VertexId v) const {
    std::vector<EdgeId> out;
    for (int c = 1; c <= rank_; ++c)
        for (EdgeId e : edges_at(v, c)) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
}

bool KGraph::is_strict_sink(VertexId v) const {
    for (int c = 1; c <= rank_; ++c)
        if (!edges_at(v, c).empty()) return false;
    return true;
}

std::pair<EdgeId, EdgeId> KGraph::swap_up(EdgeId lo_first, EdgeId hi_second) const {
    auto it = square_up_.find({lo_first, hi_second});
    if (it == square_up_.end())
        throw std::runtime_error("no square for pair " + edge(lo_first).id + "." +
                                 edge(hi_second).id);
    return it->second;
}

std::pair<EdgeId, EdgeId> KGraph::swap_down(EdgeId hi_first, EdgeId lo_second) const {
    auto it = square_down_.find({hi_first, lo_second});
    if (it == square_down_.end())
        throw std::runtime_error("no square for pair " + edge(hi_first).id + "." +
                                 edge(lo_second).id);
    return it->second;
}

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw std::runtime_error(msg); }

// Applies the two square-move routes that reverse the color order of an
// ascending tricolored word and returns both results. The routes must agree
// for the squares to present a genuine path category when rank >= 3.
std::pair<std::array<EdgeId, 3>, std::array<EdgeId, 3>> hexagon_routes(const KGraph& g, EdgeId a,
                                                                       EdgeId b, EdgeId c) {
    // Route 1: swap (a,b), then (a,c), then (b,c).
    auto [b1, a1] = g.swap_up(a, b);
    auto [c1, a2] = g.swap_up(a1, c);
    auto [c2, b2] = g.swap_up(b1, c1);
    std::array<EdgeId, 3> r1{c2, b2, a2};
    // Route 2: swap (b,c), then (a,c), then (a,b).
    auto [c3, b3] = g.swap_up(b, c);
    auto [c4, a3] = g.swap_up(a, c3);
    auto [b4, a4] = g.swap_up(a3, b3);
    std::array<EdgeId, 3> r2{c4, b4, a4};
    return {r1, r2};
}

}  // namespace

KGraph validate(const Skeleton& sk) {
    if (sk.rank < 1) invalid("rank-0 graph");

    KGraph g;
    g.rank_ = sk.rank;
    g.name_ = sk.name;
    g.skeleton_ = sk;

    g.vertex_names_ = sk.vertices;
    std::sort(g.vertex_names_.begin(), g.vertex_names_.end());
    if (std::adjacent_find(g.vertex_names_.begin(), g.vertex_names_.end()) !=
        g.vertex_names_.end())
        invalid("duplicate vertex id");
    if (g.vertex_names_.empty()) invalid("graph has no vertices");

    auto vertex_index = [&](const std::string& id) -> VertexId {
        auto it = std::lower_bound(g.vertex_names_.begin(), g.vertex_names_.end(), id);
        if (it == g.vertex_names_.end() || *it != id) invalid("unknown vertex '" + id + "'");
        return static_cast<VertexId>(it - g.vertex_names_.begin());
    };

    std::vector<SkeletonEdge> sorted_edges = sk.edges;
    std::sort(sorted_edges.begin(), sorted_edges.end(),
              [](const SkeletonEdge& a, const SkeletonEdge& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < sorted_edges.size(); ++i)
        if (sorted_edges[i].id == sorted_edges[i - 1].id)
            invalid("duplicate edge id '" + sorted_edges[i].id + "'");

    g.out_.assign(g.vertex_names_.size(),
                  std::vector<std::vector<EdgeId>>(static_cast<std::size_t>(sk.rank)));
    for (const auto& se : sorted_edges) {
        if (se.color < 1 || se.color > sk.rank)
            invalid("edge '" + se.id + "': color out of range");
        Edge e;
        e.id = se.id;
        e.color = se.color;
        e.range = vertex_index(se.range);
        e.source = vertex_index(se.source);
        EdgeId idx = static_cast<EdgeId>(g.edges_.size());
        g.edges_.push_back(e);
        g.out_[static_cast<std::size_t>(e.range)][static_cast<std::size_t>(e.color - 1)]
            .push_back(idx);
    }

    auto edge_index = [&](const std::string& id) -> EdgeId {
        auto v = g.find_edge(id);
        if (!v) invalid("unknown edge '" + id + "'");
        return *v;
    };

    // Square table: keys are composable (lower color, higher color) pairs.
    for (const auto& sq : sk.squares) {
        EdgeId a = edge_index(sq.lhs_first);
        EdgeId b = edge_index(sq.lhs_second);
        EdgeId c = edge_index(sq.rhs_first);
        EdgeId d = edge_index(sq.rhs_second);
        const Edge &ea = g.edges_[a], &eb = g.edges_[b], &ec = g.edges_[c], &ed = g.edges_[d];
        if (ea.color >= eb.color) invalid("square " + sq.lhs_first + "." + sq.lhs_second +
                                          ": left side must list the lower color first");
        if (ec.color != eb.color || ed.color != ea.color)
            invalid("square " + sq.lhs_first + "." + sq.lhs_second +
                    ": right side must swap the colors");
        if (ea.source != eb.range || ec.source != ed.range || ea.range != ec.range ||
            eb.source != ed.source)
            invalid("square endpoint mismatch: " + sq.lhs_first + "." + sq.lhs_second + " = " +
                    sq.rhs_first + "." + sq.rhs_second);
        if (!g.square_up_.emplace(std::make_pair(a, b), std::make_pair(c, d)).second)
            invalid("duplicate square for pair " + sq.lhs_first + "." + sq.lhs_second);
        if (!g.square_down_.emplace(std::make_pair(c, d), std::make_pair(a, b)).second)
            invalid("square table not bijective: pair " + sq.rhs_first + "." + sq.rhs_second +
                    " appears on two right sides");
    }

    // Totality: every composable bicolored pair occurs on each side.
    for (int i = 1; i <= sk.rank; ++i) {
        for (int j = i + 1; j <= sk.rank; ++j) {
            for (EdgeId a = 0; a < g.edge_count(); ++a) {
                const Edge& ea = g.edges_[static_cast<std::size_t>(a)];
                if (ea.color == i) {
                    for (EdgeId b : g.edges_at(ea.source, j))
                        if (!g.square_up_.count({a, b}))
                            invalid("square table not total: no square for " + ea.id + "." +
                                    g.edges_[static_cast<std::size_t>(b)].id);
                } else if (ea.color == j) {
                    for (EdgeId b : g.edges_at(ea.source, i))
                        if (!g.square_down_.count({a, b}))
                            invalid("square table not bijective: pair " + ea.id + "." +
                                    g.edges_[static_cast<std::size_t>(b)].id +
                                    " is missing from the right sides");
                }
            }
        }
    }

    // Hexagon condition for rank >= 3.
    if (sk.rank >= 3) {
        for (EdgeId a = 0; a < g.edge_count(); ++a) {
            const Edge& ea = g.edges_[static_cast<std::size_t>(a)];
            for (int j = ea.color + 1; j <= sk.rank; ++j) {
                for (EdgeId b : g.edges_at(ea.source, j)) {
                    const Edge& eb = g.edges_[static_cast<std::size_t>(b)];
                    for (int l = j + 1; l <= sk.rank; ++l) {
                        for (EdgeId c : g.edges_at(eb.source, l)) {
                            auto [r1, r2] = hexagon_routes(g, a, b, c);
                            if (r1 != r2)
                                invalid("hexagon violation on path " + ea.id + "." + eb.id +
                                        "." + g.edges_[static_cast<std::size_t>(c)].id);
                        }
                    }
                }
            }
        }
    }

    // Flags.
    int n = g.vertex_count();
    g.has_sources_ = false;
    for (VertexId v = 0; v < n; ++v)
        for (int c = 1; c <= sk.rank; ++c)
            if (g.edges_at(v, c).empty()) g.has_sources_ = true;

    g.locally_convex_ = true;
    for (EdgeId e = 0; e < g.edge_count() && g.locally_convex_; ++e) {
        const Edge& ed = g.edges_[static_cast<std::size_t>(e)];
        for (int j = 1; j <= sk.rank; ++j) {
            if (j == ed.color) continue;
            if (!g.edges_at(ed.range, j).empty() && g.edges_at(ed.source, j).empty()) {
                g.locally_convex_ = false;
                break;
            }
        }
    }

    // Forward reachability (colors merged) and cycle membership.
    g.reach_.assign(static_cast<std::size_t>(n), {});
    for (VertexId v = 0; v < n; ++v) {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        std::deque<VertexId> q{v};
        seen[static_cast<std::size_t>(v)] = true;
        while (!q.empty()) {
            VertexId u = q.front();
            q.pop_front();
            for (EdgeId e : g.all_edges_at(u)) {
                VertexId w = g.edges_[static_cast<std::size_t>(e)].source;
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    q.push_back(w);
                }
            }
        }
        for (VertexId u = 0; u < n; ++u)
            if (seen[static_cast<std::size_t>(u)]) g.reach_[static_cast<std::size_t>(v)].push_back(u);
    }

    g.on_cycle_.assign(static_cast<std::size_t>(n), false);
    for (VertexId v = 0; v < n; ++v) {
        for (EdgeId e : g.all_edges_at(v)) {
            VertexId w = g.edges_[static_cast<std::size_t>(e)].source;
            const auto& rw = g.reach_[static_cast<std::size_t>(w)];
            if (std::binary_search(rw.begin(), rw.end(), v)) {
                g.on_cycle_[static_cast<std::size_t>(v)] = true;
                break;
            }
        }
    }
    g.acyclic_ = std::none_of(g.on_cycle_.begin(), g.on_cycle_.end(), [](bool b) { return b; });

    // Per-vertex enumeration regime for maximal trajectories.
    g.regimes_.assign(static_cast<std::size_t>(n), BoundaryRegime::truncated);
    for (VertexId v = 0; v < n; ++v) {
        const auto& rs = g.reach_[static_cast<std::size_t>(v)];
        bool any_cycle = false, tame = true, det = true;
        for (VertexId u : rs) {
            int total_out = 0;
            for (int c = 1; c <= sk.rank; ++c) {
                int deg = static_cast<int>(g.edges_at(u, c).size());
                total_out += deg;
                if (deg != 1) det = false;
            }
            if (g.on_cycle_[static_cast<std::size_t>(u)]) {
                any_cycle = true;
                if (total_out != 1) tame = false;
            }
        }
        if (!any_cycle)
            g.regimes_[static_cast<std::size_t>(v)] = BoundaryRegime::acyclic;
        else if (sk.rank == 1 && tame)
            g.regimes_[static_cast<std::size_t>(v)] = BoundaryRegime::tame_cycles;
        else if (det)
            g.regimes_[static_cast<std::size_t>(v)] = BoundaryRegime::deterministic;
    }
    g.boundary_finite_ = std::all_of(g.regimes_.begin(), g.regimes_.end(), [](BoundaryRegime r) {
        return r != BoundaryRegime::truncated;
    });

    g.boundary_memo_ = make_boundary_memo();

    // Alignment diagnostic: the largest minimal-common-extension set over
    // pairs of degree <= (1,...,1). Always finite on a finite skeleton.
    int max_mce = 0;
    Degree ones = Degree::uniform(sk.rank, 1);
    for (VertexId v = 0; v < n; ++v) {
        std::vector<Path> pool;
        for (const Degree& m : degrees_leq(ones))
            for (const Path& p : paths_of_degree(g, v, m)) pool.push_back(p);
        for (const Path& mu : pool)
            for (const Path& nu : pool)
                max_mce = std::max(max_mce, static_cast<int>(mce(g, mu, nu).size()));
    }
    g.max_mce_diag_ = max_mce;

    return g;
}

KGraph load_kgraph(const std::string& path) { return validate(load_skeleton_file(path)); }

}  // namespace kg
