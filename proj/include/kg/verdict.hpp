#ifndef KG_VERDICT_HPP
#define KG_VERDICT_HPP

#include <string>

namespace kg {

/// Three-valued outcome of a decision procedure. `holds` and `fails` are
/// backed by certificates / counterexamples held in the surrounding report;
/// `unknown` means a search bound was exhausted without a sound conclusion.
enum class Outcome { holds, fails, unknown };

struct Verdict {
    Outcome outcome = Outcome::unknown;
    /// Short machine-readable tag describing how the outcome was established
    /// (e.g. "boundary-oracle", "bounded-search", "by-construction").
    std::string certificate;

    bool holds() const { return outcome == Outcome::holds; }
    bool fails() const { return outcome == Outcome::fails; }
    bool unknown() const { return outcome == Outcome::unknown; }

    static Verdict make_holds(std::string cert) { return {Outcome::holds, std::move(cert)}; }
    static Verdict make_fails(std::string cert) { return {Outcome::fails, std::move(cert)}; }
    static Verdict make_unknown(std::string cert) { return {Outcome::unknown, std::move(cert)}; }
};

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::holds: return "holds";
        case Outcome::fails: return "fails";
        default: return "unknown";
    }
}

/// CLI convention: holds -> 0, fails -> 1, unknown -> 2.
inline int exit_code(Outcome o) {
    switch (o) {
        case Outcome::holds: return 0;
        case Outcome::fails: return 1;
        default: return 2;
    }
}

}  // namespace kg

#endif  // KG_VERDICT_HPP
