#ifndef KG_SKELETON_HPP
#define KG_SKELETON_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace kg {

/// Parse error with 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + msg),
          line(line),
          col(col) {}
    int line;
    int col;
};

struct SkeletonEdge {
    std::string id;
    int color = 0;       // 1-based
    std::string range;   // vertex id
    std::string source;  // vertex id
};

/// One commuting square, stored in the lower-color-first direction:
/// the path lhs_first.lhs_second (color i then color j, i < j) equals
/// rhs_first.rhs_second (color j then color i).
struct SkeletonSquare {
    std::string lhs_first;
    std::string lhs_second;
    std::string rhs_first;
    std::string rhs_second;
};

/// Raw k-colored multigraph presentation with commuting squares, as parsed.
/// Structural well-formedness only; the factorization-level checks live in
/// validate().
struct Skeleton {
    int rank = 0;
    std::vector<std::string> vertices;
    std::vector<SkeletonEdge> edges;
    std::vector<SkeletonSquare> squares;
    std::string name;  // optional label (e.g. source file stem)
};

/// Parses the line-oriented presentation format:
///
///   rank 2
///   vertex u
///   edge f 1 u v        # id, color, range, source
///   square f.g = g.f    # color-i edge then color-j edge (i<j) on the left
///
/// '#' starts a comment. Rejects duplicate ids, unknown references, colors
/// outside 1..rank, and squares whose edges do not compose or whose endpoints
/// do not match.
Skeleton parse_skeleton(const std::string& text);

Skeleton load_skeleton_file(const std::string& path);

/// Canonical serialization: vertices, edges and squares sorted
/// lexicographically by id. parse(serialize(sk)) == canonical form of sk.
std::string serialize_skeleton(const Skeleton& sk);

}  // namespace kg

#endif  // KG_SKELETON_HPP
