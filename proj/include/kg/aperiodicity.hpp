#ifndef KG_APERIODICITY_HPP
#define KG_APERIODICITY_HPP

#include <optional>
#include <vector>

#include "kg/align.hpp"
#include "kg/boundary.hpp"

namespace kg {

/// An exact shift-equality witness: every trajectory from vertex has degree
/// >= m v n and equal m- and n-shifts.
struct PeriodicityWitness {
    VertexId vertex = -1;
    Degree m;
    Degree n;
};

struct SeparatedPair {
    Path mu;
    Path nu;
    Path tau;  // mce(mu.tau, nu.tau) is empty, re-checkable
};

struct AperiodicityReport {
    Verdict verdict;
    std::vector<SeparatedPair> witness_map;
    std::vector<std::pair<Path, Path>> unseparated;
    std::optional<PeriodicityWitness> periodicity_witness;
    int pairs_scanned = 0;
    bool all_pairs_separated = false;
};

struct LpCheck {
    Verdict verdict;
    /// For fails: a trajectory violating degree lower bound or shift equality.
    std::optional<BoundaryPath> violating;
    std::string reason;
};

/// Decides local periodicity (m, n) at v. Exact whenever the trajectory set
/// at v is exactly enumerable; otherwise refutes from windows visible in
/// truncations or reports unknown. Requires m != n.
LpCheck check_local_periodicity(const KGraph& g, VertexId v, const Degree& m, const Degree& n);

/// Scans reduced pairs (equal range and source, meet of degrees zero) for
/// extension-killing tails, then certifies:
///  - fails on an exact local-periodicity witness,
///  - holds when the graph is acyclic, when rank 1 with every cycle having
///    an entrance, or when all trajectory sets are exact and no witness
///    exists,
///  - unknown otherwise (the witness map still documents the bounded scan).
AperiodicityReport check_aperiodicity(const KGraph& g, const Degree& pair_bound,
                                      const Degree& tau_bound);
AperiodicityReport check_aperiodicity(const KGraph& g);

/// The shift-equality oracle alone: searches exact vertices for a local
/// periodicity witness and certifies its absence when every vertex is exact.
AperiodicityReport nlp_oracle(const KGraph& g);

/// Rank-1 only: true iff every cycle has a vertex with a second emitted
/// edge. Independent of the trajectory machinery.
bool every_loop_has_entrance(const KGraph& g);

/// A tail tau at the common source of H killing every distinct pair:
/// mce(alpha.tau, beta.tau) is empty for all distinct alpha, beta in H.
/// Built by iterated single-pair separation; throws when a pair cannot be
/// separated within the bound.
Path separating_extension(const KGraph& g, const std::vector<Path>& H, const Degree& tau_bound);

struct PeriodicityTriple {
    Path mu;
    Path nu;
    Path alpha;
};

/// From an exact local periodicity (m, n) at v: mu = x(0,m), nu = x(0,n),
/// alpha = x(m, m v n) for a trajectory x from v. Verifies the prepend
/// equality mu.alpha.z = nu.alpha.z over every trajectory z at s(alpha).
PeriodicityTriple periodicity_triple(const KGraph& g, VertexId v, const Degree& m,
                                     const Degree& n);

Degree default_pair_bound(const KGraph& g);
Degree default_tau_bound(const KGraph& g);

}  // namespace kg

#endif  // KG_APERIODICITY_HPP
