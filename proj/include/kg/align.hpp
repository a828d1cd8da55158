#ifndef KG_ALIGN_HPP
#define KG_ALIGN_HPP

#include <optional>
#include <string>
#include <vector>

#include "kg/path.hpp"
#include "kg/verdict.hpp"

namespace kg {

/// Minimal common extensions of mu and nu: the common extensions of degree
/// exactly d(mu) v d(nu). Empty when the ranges differ or no extension
/// exists. Sorted.
std::vector<Path> mce(const KGraph& g, const Path& mu, const Path& nu);

/// The tail pairs (alpha, beta) with mu.alpha = nu.beta running over the
/// minimal common extensions; (alpha, beta) -> mu.alpha is a bijection onto
/// mce(mu, nu).
std::vector<std::pair<Path, Path>> min_extensions(const KGraph& g, const Path& mu,
                                                  const Path& nu);

/// For E a set of paths with range r(lambda): the tails nu(d(lambda),
/// d(lambda) v d(mu)) over nu in mce(lambda, mu), mu in E. All results have
/// range s(lambda).
std::vector<Path> ext(const KGraph& g, const Path& lambda, const std::vector<Path>& E);

enum class FeStrategy { automatic, boundary_oracle, bounded_search };

enum class FeCertificate { boundary_oracle, bounded_search, by_construction };

/// A set of paths with common range certified exhaustive: every path from
/// that vertex has a minimal common extension with some member.
struct FiniteExhaustiveSet {
    VertexId vertex = -1;
    std::vector<Path> paths;
    FeCertificate certificate = FeCertificate::bounded_search;
};

struct ExhaustiveCheck {
    Verdict verdict;
    /// For fails: a path with empty MCE against every member.
    std::optional<Path> witness;
    /// For fails found through the trajectory oracle when no finite witness
    /// surfaced within the bound: a human-readable description of the
    /// avoiding trajectory.
    std::string detail;
};

/// Decides exhaustiveness of E at its common range vertex. `holds` is only
/// ever certified through the complete-trajectory oracle (or, for callers
/// constructing <=n sets on locally convex graphs, by construction); a
/// bounded witness search alone can refute but never confirm.
ExhaustiveCheck is_exhaustive(const KGraph& g, const std::vector<Path>& E,
                              FeStrategy strategy = FeStrategy::automatic,
                              const Degree& bound = Degree());

/// All certified exhaustive subsets of the degree-capped path pool at v,
/// in a deterministic order. Pool is {lambda in vLambda : d(lambda) <= cap};
/// subsets are certified via is_exhaustive.
std::vector<FiniteExhaustiveSet> fe_family(const KGraph& g, VertexId v, const Degree& cap);

/// The <=n set at v as a by-construction certified exhaustive set. Only
/// valid on locally convex graphs (row-finiteness is automatic here).
FiniteExhaustiveSet paths_le_fe(const KGraph& g, VertexId v, const Degree& n);

}  // namespace kg

#endif  // KG_ALIGN_HPP
