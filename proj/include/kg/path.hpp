#ifndef KG_PATH_HPP
#define KG_PATH_HPP

#include <string>
#include <utility>
#include <vector>

#include "kg/degree.hpp"
#include "kg/kgraph.hpp"

namespace kg {

/// A morphism of the path category in color-ordered normal form: the edge
/// word lists all color-1 edges first, then color-2, and so on, read from the
/// range toward the source. Two paths are equal iff their (range, word) pairs
/// are equal; the normal form is unique.
struct Path {
    VertexId range = -1;
    std::vector<EdgeId> word;
    Degree degree;

    bool is_vertex() const { return word.empty(); }

    friend bool operator==(const Path& a, const Path& b) {
        return a.range == b.range && a.word == b.word;
    }
    friend bool operator!=(const Path& a, const Path& b) { return !(a == b); }
    /// Enumeration order: (degree, word, range), lexicographic.
    friend bool operator<(const Path& a, const Path& b) {
        if (a.degree.coords() != b.degree.coords())
            return a.degree.coords() < b.degree.coords();
        if (a.word != b.word) return a.word < b.word;
        return a.range < b.range;
    }
};

Path vertex_path(const KGraph& g, VertexId v);
Path edge_path(const KGraph& g, EdgeId e);

VertexId source_of(const KGraph& g, const Path& p);
inline VertexId range_of(const Path& p) { return p.range; }

/// Builds a path from an arbitrary composable edge word (any color order),
/// renormalizing with square moves.
Path path_from_word(const KGraph& g, VertexId range, const std::vector<EdgeId>& word);

/// Composition mu.nu; requires s(mu) = r(nu).
Path compose(const KGraph& g, const Path& mu, const Path& nu);

/// The unique subpath of degree q - p sitting between positions p and q.
/// Requires p <= q <= d(lambda); out-of-range degrees are an error, not a
/// clamp.
Path segment(const KGraph& g, const Path& lambda, const Degree& p, const Degree& q);

/// Unique split lambda = mu.nu with d(mu) = m. Requires m <= d(lambda).
std::pair<Path, Path> factorize(const KGraph& g, const Path& lambda, const Degree& m);

/// All paths of degree n with range v, in normal form, sorted.
std::vector<Path> paths_of_degree(const KGraph& g, VertexId v, const Degree& n);

/// The boundary-compatible truncations: paths of degree <= n that cannot be
/// extended in any color where their degree falls short of n. Sorted.
std::vector<Path> paths_le(const KGraph& g, VertexId v, const Degree& n);

/// Membership in the set enumerated by paths_le.
bool in_le(const KGraph& g, const Path& lambda, const Degree& n);

/// Split of lambda into a degree-<=m head and degree-<=n tail; exact and
/// unique on locally convex graphs. Requires lambda in the <=(m+n) set.
std::pair<Path, Path> factorize_le(const KGraph& g, const Path& lambda, const Degree& m,
                                   const Degree& n);

/// All paths with range v and |d| <= total_bound, ordered by (|d|, path).
/// Used for breadth-first witness searches.
std::vector<Path> paths_by_total(const KGraph& g, VertexId v, int total_bound);

std::string format_path(const KGraph& g, const Path& p);
/// Accepts a vertex id (vertex path) or a '*'-separated edge word.
Path parse_path(const KGraph& g, const std::string& text);

}  // namespace kg

#endif  // KG_PATH_HPP
