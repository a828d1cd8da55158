#ifndef KG_COFINALITY_HPP
#define KG_COFINALITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "kg/align.hpp"
#include "kg/boundary.hpp"

namespace kg {

/// Vertices reachable from v, v included: exactly {u : v Lambda u nonempty}.
std::vector<VertexId> reachable_from(const KGraph& g, VertexId v);

/// Result for one ordered vertex pair (v, w): either an exhaustive set at w
/// whose sources are all reachable from v, or a counterexample (an avoiding
/// trajectory from w, and/or a trapped vertex set containing w).
struct PairResult {
    Verdict verdict;
    std::optional<FiniteExhaustiveSet> fe_cert;
    std::optional<Degree> le_cert_n;  // fe_cert is the <=n set at w
    std::optional<BoundaryPath> avoiding;
    std::vector<VertexId> trapped;  // fails: set closed against reaching R(v)
    std::string note;
};

struct CofinalityReport {
    Verdict verdict;
    std::map<std::pair<VertexId, VertexId>, PairResult> pairs;
};

/// Exact decision for locally convex graphs (row-finiteness is automatic):
/// iterate the source sets of the diagonal <=-sets from w until one lands in
/// R(v) or the set sequence repeats.
PairResult cofinality_lc_exact(const KGraph& g, VertexId v, VertexId w);

/// For every pair (v, w), find an exhaustive set at w with sources in R(v).
/// Locally convex graphs route through the exact iteration; otherwise
/// candidate <=n sets are certified through the trajectory oracle and
/// counterexamples searched. The aggregate holds iff every pair holds.
CofinalityReport check_cofinality(const KGraph& g, int bound);
CofinalityReport check_cofinality(const KGraph& g);

struct BoundaryOracleResult {
    Verdict verdict;
    std::optional<BoundaryPath> avoiding;  // a trajectory never visiting R(v)
    std::string note;
};

/// Trajectory form of cofinality at v: every trajectory visits R(v).
/// Exact whenever enumeration is exact (definite hits inside truncations
/// also count; rank-1 truncations cover every trajectory prefix).
BoundaryOracleResult cofinality_boundary_oracle(const KGraph& g, VertexId v);

/// Position of (m, n) in the diagonal listing (1,1), (1,2), (2,1), (1,3),
/// (2,2), (3,1), ... of pairs of positive integers. Bijective.
std::int64_t diagonal_position(std::int64_t m, std::int64_t n);
std::pair<std::int64_t, std::int64_t> diagonal_unposition(std::int64_t l);

/// Rank-1 only: paths of length <= n from w that are either full length or
/// end at a vertex emitting no edge (the finite-graph form of the
/// {0, infinity} receiver dichotomy).
std::vector<Path> xn_paths(const KGraph& g, VertexId w, int n);

/// Rank-1 exact check via the xn_paths frontier; agrees with the locally
/// convex iteration.
PairResult check_cofinality_digraph(const KGraph& g, VertexId v, VertexId w);

struct TrappedTrajectory {
    BoundaryPath path;        // final constructed prefix (truncated marker)
    std::vector<Path> stages; // monotone construction stages
};

/// Builds a trajectory prefix staying inside K, extending stage by stage
/// against the diagonal listing of certified exhaustive-set demands.
/// Requires: every vertex of K has an exact trajectory set; every certified
/// demand at a K-vertex has a source back in K; K is closed under
/// predecessors. Throws when a demand cannot be met inside K.
TrappedTrajectory build_boundary_in_K(const KGraph& g, const std::vector<VertexId>& K,
                                      VertexId v, int steps, const Degree& fe_cap);
TrappedTrajectory build_boundary_in_K(const KGraph& g, const std::vector<VertexId>& K,
                                      VertexId v, int steps);

}  // namespace kg

#endif  // KG_COFINALITY_HPP
