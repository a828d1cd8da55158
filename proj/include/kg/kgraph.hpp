#ifndef KG_KGRAPH_HPP
#define KG_KGRAPH_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kg/degree.hpp"
#include "kg/skeleton.hpp"

namespace kg {

using VertexId = int;
using EdgeId = int;

struct Edge {
    std::string id;
    int color = 0;  // 1-based
    VertexId range = -1;
    VertexId source = -1;
};

/// How exactly the full set of maximal trajectories from a vertex can be
/// enumerated. `truncated` means enumeration is depth-capped and carries no
/// completeness claim.
enum class BoundaryRegime {
    acyclic,        // no cycle reachable: finitely many maximal finite paths
    tame_cycles,    // rank 1 and every reachable cycle vertex emits exactly one edge
    deterministic,  // every reachable vertex emits exactly one edge of every color
    truncated,
};

class BoundaryMemo;  // defined in boundary.cpp

/// A validated path category over a finite colored skeleton. Immutable after
/// validate(); all queries are const and safe to share across threads.
class KGraph {
public:
    int rank() const { return rank_; }
    const std::string& name() const { return name_; }

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    const std::string& vertex_name(VertexId v) const {
        return vertex_names_.at(static_cast<std::size_t>(v));
    }
    std::optional<VertexId> find_vertex(const std::string& id) const;

    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    std::optional<EdgeId> find_edge(const std::string& id) const;

    /// Edges of the given color emitted at v (range == v), sorted by id.
    const std::vector<EdgeId>& edges_at(VertexId v, int color) const {
        return out_.at(static_cast<std::size_t>(v)).at(static_cast<std::size_t>(color - 1));
    }
    /// All edges emitted at v across colors, sorted by id.
    std::vector<EdgeId> all_edges_at(VertexId v) const;
    bool is_strict_sink(VertexId v) const;

    /// Rewrites the adjacent pair (first of color i, second of color j) with
    /// i < j into the equal path (color j edge, color i edge), or the other
    /// way round for swap_down. Both directions are total on composable pairs.
    std::pair<EdgeId, EdgeId> swap_up(EdgeId lo_first, EdgeId hi_second) const;
    std::pair<EdgeId, EdgeId> swap_down(EdgeId hi_first, EdgeId lo_second) const;

    // Flags computed at validation.
    bool locally_convex() const { return locally_convex_; }
    bool acyclic() const { return acyclic_; }
    bool has_sources() const { return has_sources_; }
    bool boundary_finite() const { return boundary_finite_; }
    /// Diagnostic recorded at validation: max |MCE(mu,nu)| over pairs of
    /// degree <= (1,...,1). Finite alignment itself is automatic here.
    int max_mce_diagnostic() const { return max_mce_diag_; }

    BoundaryRegime regime_at(VertexId v) const {
        return regimes_.at(static_cast<std::size_t>(v));
    }
    bool vertex_on_cycle(VertexId v) const { return on_cycle_.at(static_cast<std::size_t>(v)); }
    /// Vertices reachable from v by forward extension (v itself included).
    const std::vector<VertexId>& reachable(VertexId v) const {
        return reach_.at(static_cast<std::size_t>(v));
    }

    const Skeleton& skeleton() const { return skeleton_; }

    BoundaryMemo& boundary_memo() const { return *boundary_memo_; }

private:
    friend KGraph validate(const Skeleton& sk);

    int rank_ = 0;
    std::string name_;
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::vector<EdgeId>>> out_;  // [vertex][color-1]
    std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> square_up_;
    std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> square_down_;
    bool locally_convex_ = false;
    bool acyclic_ = false;
    bool has_sources_ = false;
    bool boundary_finite_ = false;
    int max_mce_diag_ = 0;
    std::vector<bool> on_cycle_;
    std::vector<std::vector<VertexId>> reach_;
    std::vector<BoundaryRegime> regimes_;
    Skeleton skeleton_;
    std::shared_ptr<BoundaryMemo> boundary_memo_;
};

/// Checks that the squares present a genuine path category: the square table
/// is total and bijective on composable bicolored pairs, and for rank >= 3
/// the two square-move routes through any tricolored word agree (hexagon
/// condition). Throws std::runtime_error with a description on failure.
KGraph validate(const Skeleton& sk);

KGraph load_kgraph(const std::string& path);

}  // namespace kg

#endif  // KG_KGRAPH_HPP
