#include "kg/skeleton.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace kg {

namespace {

bool valid_id(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

struct Cursor {
    const std::string& line;
    int lineno;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= line.size() || line[pos] == '#';
    }
    int col() const { return static_cast<int>(pos) + 1; }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(lineno, col(), msg); }

    std::string token(const char* what) {
        skip_ws();
        if (done()) fail(std::string("expected ") + what);
        std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])) &&
               line[pos] != '#' && line[pos] != '.' && line[pos] != '=')
            ++pos;
        if (pos == start) fail(std::string("expected ") + what);
        return line.substr(start, pos - start);
    }
    void expect_char(char c) {
        skip_ws();
        if (pos >= line.size() || line[pos] != c)
            fail(std::string("expected '") + c + "'");
        ++pos;
    }
    void expect_end() {
        if (!done()) fail("trailing input");
    }
};

}  // namespace

Skeleton parse_skeleton(const std::string& text) {
    Skeleton sk;
    std::set<std::string> vertex_ids;
    std::map<std::string, std::size_t> edge_by_id;
    std::set<std::pair<std::string, std::string>> square_lhs_seen;
    bool rank_seen = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        Cursor cur{line, lineno};
        if (cur.done()) continue;
        std::string kw = cur.token("keyword");

        if (kw == "rank") {
            if (rank_seen) cur.fail("duplicate rank declaration");
            std::string val = cur.token("rank value");
            try {
                sk.rank = std::stoi(val);
            } catch (const std::exception&) {
                cur.fail("rank is not a number");
            }
            if (sk.rank < 1) cur.fail("rank must be at least 1");
            rank_seen = true;
            cur.expect_end();
        } else if (kw == "vertex") {
            std::string id = cur.token("vertex id");
            if (!valid_id(id)) cur.fail("invalid vertex id '" + id + "'");
            if (!vertex_ids.insert(id).second) cur.fail("duplicate vertex id '" + id + "'");
            sk.vertices.push_back(id);
            cur.expect_end();
        } else if (kw == "edge") {
            if (!rank_seen) cur.fail("edge before rank declaration");
            SkeletonEdge e;
            e.id = cur.token("edge id");
            if (!valid_id(e.id)) cur.fail("invalid edge id '" + e.id + "'");
            if (edge_by_id.count(e.id)) cur.fail("duplicate edge id '" + e.id + "'");
            std::string color = cur.token("color");
            try {
                e.color = std::stoi(color);
            } catch (const std::exception&) {
                cur.fail("color is not a number");
            }
            if (e.color < 1 || e.color > sk.rank)
                cur.fail("color " + color + " out of range 1.." + std::to_string(sk.rank));
            e.range = cur.token("range vertex");
            e.source = cur.token("source vertex");
            if (!vertex_ids.count(e.range)) cur.fail("unknown vertex '" + e.range + "'");
            if (!vertex_ids.count(e.source)) cur.fail("unknown vertex '" + e.source + "'");
            cur.expect_end();
            edge_by_id[e.id] = sk.edges.size();
            sk.edges.push_back(e);
        } else if (kw == "square") {
            SkeletonSquare sq;
            sq.lhs_first = cur.token("edge id");
            cur.expect_char('.');
            sq.lhs_second = cur.token("edge id");
            cur.expect_char('=');
            sq.rhs_first = cur.token("edge id");
            cur.expect_char('.');
            sq.rhs_second = cur.token("edge id");
            cur.expect_end();

            auto lookup = [&](const std::string& id) -> const SkeletonEdge* {
                auto it = edge_by_id.find(id);
                if (it == edge_by_id.end()) cur.fail("unknown edge '" + id + "'");
                return &sk.edges[it->second];
            };
            const SkeletonEdge* a = lookup(sq.lhs_first);
            const SkeletonEdge* b = lookup(sq.lhs_second);
            const SkeletonEdge* c = lookup(sq.rhs_first);
            const SkeletonEdge* d = lookup(sq.rhs_second);
            if (a->color >= b->color)
                cur.fail("square left side must list the lower color first");
            if (c->color != b->color || d->color != a->color)
                cur.fail("square right side must swap the two colors");
            // Both sides must be composable words spelling a path with the
            // same endpoints.
            if (a->source != b->range || c->source != d->range ||
                a->range != c->range || b->source != d->source)
                cur.fail("square endpoint mismatch");
            if (!square_lhs_seen.insert({sq.lhs_first, sq.lhs_second}).second)
                cur.fail("duplicate square for pair " + sq.lhs_first + "." + sq.lhs_second);
            sk.squares.push_back(sq);
        } else {
            cur.pos = 0;
            cur.fail("unknown keyword '" + kw + "'");
        }
    }
    if (!rank_seen) throw ParseError(lineno + 1, 1, "missing rank declaration");
    return sk;
}

Skeleton load_skeleton_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Skeleton sk = parse_skeleton(buf.str());
    // Use the file stem as the graph label.
    std::size_t slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = stem.find_last_of('.');
    sk.name = dot == std::string::npos ? stem : stem.substr(0, dot);
    return sk;
}

std::string serialize_skeleton(const Skeleton& sk) {
    Skeleton s = sk;
    std::sort(s.vertices.begin(), s.vertices.end());
    std::sort(s.edges.begin(), s.edges.end(),
              [](const SkeletonEdge& a, const SkeletonEdge& b) { return a.id < b.id; });
    std::sort(s.squares.begin(), s.squares.end(),
              [](const SkeletonSquare& a, const SkeletonSquare& b) {
                  return std::tie(a.lhs_first, a.lhs_second) <
                         std::tie(b.lhs_first, b.lhs_second);
              });

    std::ostringstream out;
    out << "rank " << s.rank << "\n";
    for (const auto& v : s.vertices) out << "vertex " << v << "\n";
    for (const auto& e : s.edges)
        out << "edge " << e.id << " " << e.color << " " << e.range << " " << e.source << "\n";
    for (const auto& q : s.squares)
        out << "square " << q.lhs_first << "." << q.lhs_second << " = " << q.rhs_first << "."
            << q.rhs_second << "\n";
    return out.str();
}

}  // namespace kg
