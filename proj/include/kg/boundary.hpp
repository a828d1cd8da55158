#ifndef KG_BOUNDARY_HPP
#define KG_BOUNDARY_HPP

#include <optional>
#include <string>
#include <vector>

#include "kg/path.hpp"

namespace kg {

/// A maximal trajectory (finite or infinite) presented finitely.
///
///  - finite: the whole path; its source is a strict sink.
///  - periodic: prefix followed by an endlessly repeated loop; degree is
///    infinite exactly in the colors the loop uses.
///  - truncated: a depth-capped prefix of trajectories that could not be
///    enumerated exactly; a marker, not a certified member.
struct BoundaryPath {
    enum class Body { finite, periodic, truncated };
    Body body = Body::finite;
    Path prefix;
    std::optional<Path> cycle;  // periodic only: loop at s(prefix)
    Degree depth;               // truncated only: enumeration box

    VertexId range() const { return prefix.range; }
    bool exact_member() const { return body != Body::truncated; }
};

ExtDegree bp_degree(const KGraph& g, const BoundaryPath& x);

/// Canonical form: minimal prefix (trailing edges absorbed into the loop)
/// and primitive loop. Structural equality of canonical forms implies path
/// equality; the converse is completed by bp_equal.
BoundaryPath bp_canonical(const KGraph& g, const BoundaryPath& x);

bool bp_equal(const KGraph& g, const BoundaryPath& x, const BoundaryPath& y);

/// The finite segment x(p, q); requires p <= q <= d(x), q finite. Truncated
/// bodies only expose segments inside their prefix.
Path bp_segment(const KGraph& g, const BoundaryPath& x, const Degree& p, const Degree& q);

VertexId bp_vertex_at(const KGraph& g, const BoundaryPath& x, const Degree& n);

/// Left shift by m: the trajectory p,q -> x(m+p, m+q). Requires m <= d(x).
BoundaryPath shift(const KGraph& g, const BoundaryPath& x, const Degree& m);

/// The trajectory lambda.x; requires s(lambda) = r(x).
BoundaryPath prepend(const KGraph& g, const Path& lambda, const BoundaryPath& x);

/// True iff some member of E is an initial segment of x.
bool bp_hits(const KGraph& g, const BoundaryPath& x, const std::vector<Path>& E);

std::string bp_format(const KGraph& g, const BoundaryPath& x);

bool bp_less(const KGraph& g, const BoundaryPath& a, const BoundaryPath& b);

struct BoundarySet {
    std::vector<BoundaryPath> paths;
    /// True when the set is the complete list of maximal trajectories from
    /// the vertex. Individual finite/periodic members are certified even
    /// when the set as a whole is not.
    bool exact = false;
};

Degree default_boundary_depth(const KGraph& g);

/// Enumerates the maximal trajectories from v. Complete (exact = true) in
/// three regimes: no reachable cycle; rank 1 with only single-exit cycle
/// vertices; every reachable vertex emitting exactly one edge per color.
/// Otherwise returns sink-terminated members, rank-1 periodic members, and
/// depth-capped truncations with exact = false.
BoundarySet boundary_paths(const KGraph& g, VertexId v);
BoundarySet boundary_paths(const KGraph& g, VertexId v, const Degree& depth);

inline bool boundary_exact_at(const KGraph& g, VertexId v) {
    return g.regime_at(v) != BoundaryRegime::truncated;
}
inline bool boundary_exact(const KGraph& g) { return g.boundary_finite(); }

/// The grid category with vertices {q <= m} and one morphism per ordered
/// pair p <= q, materialized as a validated graph. All coordinates of m must
/// be finite.
struct OmegaSpec {
    int rank = 0;
    Degree cap;
};
KGraph omega(int rank, const Degree& m);
KGraph omega(const OmegaSpec& spec);

}  // namespace kg

#endif  // KG_BOUNDARY_HPP
