#ifndef KG_SIMPLICITY_HPP
#define KG_SIMPLICITY_HPP

#include <optional>
#include <string>

#include "kg/aperiodicity.hpp"
#include "kg/cofinality.hpp"

namespace kg {

struct RepCheck {
    int dimension = 0;
    int span_dim = 0;
};

struct SimplicityReport {
    AperiodicityReport aperiodicity;
    CofinalityReport cofinality;
    Verdict verdict;
    /// Advisory cross-check when an exact finite representation exists:
    /// dimension of span{S_mu S_nu^*} against dim^2. Never overrides the
    /// combinatorial verdict.
    std::optional<RepCheck> rep;
};

/// Conjunction: holds iff both hold; a single fails dominates unknown.
Verdict combine_verdicts(const Verdict& aperiodicity, const Verdict& cofinality);

struct SimplicityBounds {
    Degree pair_bound;
    Degree tau_bound;
    int cofinality_bound = 6;
};

SimplicityReport check_simplicity(const KGraph& g, const SimplicityBounds& bounds);
SimplicityReport check_simplicity(const KGraph& g);

/// Full machine-readable report (JSON text) matching the CLI schema.
std::string report_json(const KGraph& g, const SimplicityReport& rep, bool pretty = true);

}  // namespace kg

#endif  // KG_SIMPLICITY_HPP
