#include "kg/path.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace kg {

namespace {

Degree word_degree(const KGraph& g, const std::vector<EdgeId>& word) {
    Degree d(g.rank());
    for (EdgeId e : word) ++d[g.edge(e).color - 1];
    return d;
}

void check_word(const KGraph& g, VertexId range, const std::vector<EdgeId>& word) {
    VertexId at = range;
    for (EdgeId e : word) {
        if (g.edge(e).range != at)
            throw std::invalid_argument("path word is not composable at edge " + g.edge(e).id);
        at = g.edge(e).source;
    }
}

// Sorts a composable edge word into ascending color order using square
// moves. Adjacent swaps preserve the represented morphism; confluence is
// guaranteed by the validated square table (and hexagon condition for
// rank >= 3).
void normalize_word(const KGraph& g, std::vector<EdgeId>& w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t t = 0; t + 1 < w.size(); ++t) {
            int c0 = g.edge(w[t]).color, c1 = g.edge(w[t + 1]).color;
            if (c0 > c1) {
                auto [lo, hi] = g.swap_down(w[t], w[t + 1]);
                w[t] = lo;
                w[t + 1] = hi;
                changed = true;
            }
        }
    }
}

// Moves the first color-i edge of a normal-form word to the front and
// returns it together with the remaining word (still in normal form).
EdgeId split_front(const KGraph& g, std::vector<EdgeId>& w, int color) {
    std::size_t t = 0;
    while (t < w.size() && g.edge(w[t]).color != color) ++t;
    if (t == w.size()) throw std::logic_error("split_front: color not present");
    for (std::size_t j = t; j > 0; --j) {
        // Everything left of position t has a strictly lower color.
        auto [hi, lo] = g.swap_up(w[j - 1], w[j]);
        w[j] = lo;
        w[j - 1] = hi;
    }
    EdgeId front = w.front();
    w.erase(w.begin());
    return front;
}

}  // namespace

Path vertex_path(const KGraph& g, VertexId v) {
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
    return Path{v, {}, Degree::zero(g.rank())};
}

Path edge_path(const KGraph& g, EdgeId e) {
    const Edge& ed = g.edge(e);
    return Path{ed.range, {e}, Degree::unit(g.rank(), ed.color)};
}

VertexId source_of(const KGraph& g, const Path& p) {
    return p.word.empty() ? p.range : g.edge(p.word.back()).source;
}

Path path_from_word(const KGraph& g, VertexId range, const std::vector<EdgeId>& word) {
    check_word(g, range, word);
    std::vector<EdgeId> w = word;
    normalize_word(g, w);
    return Path{range, std::move(w), word_degree(g, word)};
}

Path compose(const KGraph& g, const Path& mu, const Path& nu) {
    if (source_of(g, mu) != nu.range)
        throw std::invalid_argument("compose: source/range mismatch");
    std::vector<EdgeId> w = mu.word;
    w.insert(w.end(), nu.word.begin(), nu.word.end());
    normalize_word(g, w);
    return Path{mu.range, std::move(w), mu.degree + nu.degree};
}

std::pair<Path, Path> factorize(const KGraph& g, const Path& lambda, const Degree& m) {
    if (!leq(m, lambda.degree))
        throw std::invalid_argument("factorize: degree not below d(lambda)");
    std::vector<EdgeId> rest = lambda.word;
    std::vector<EdgeId> head;
    Degree remaining = m;
    while (!remaining.is_zero()) {
        int color = 0;
        for (int i = 0; i < g.rank(); ++i)
            if (remaining[i] > 0) {
                color = i + 1;
                break;
            }
        head.push_back(split_front(g, rest, color));
        --remaining[color - 1];
    }
    Path mu{lambda.range, std::move(head), m};
    VertexId mid = source_of(g, mu);
    Path nu{mid, std::move(rest), lambda.degree - m};
    return {mu, nu};
}

Path segment(const KGraph& g, const Path& lambda, const Degree& p, const Degree& q) {
    if (!leq(p, q) || !leq(q, lambda.degree))
        throw std::invalid_argument("segment: need p <= q <= d(lambda)");
    auto [head, tail] = factorize(g, lambda, p);
    (void)head;
    return factorize(g, tail, q - p).first;
}

std::vector<Path> paths_of_degree(const KGraph& g, VertexId v, const Degree& n) {
    if (n.rank() != g.rank()) throw std::invalid_argument("paths_of_degree: rank mismatch");
    if (n.is_zero()) return {vertex_path(g, v)};
    int color = 0;
    for (int i = 0; i < g.rank(); ++i)
        if (n[i] > 0) {
            color = i + 1;
            break;
        }
    Degree rest_deg = n - Degree::unit(g.rank(), color);
    std::vector<Path> out;
    for (EdgeId e : g.edges_at(v, color)) {
        for (const Path& tail : paths_of_degree(g, g.edge(e).source, rest_deg)) {
            std::vector<EdgeId> w;
            w.reserve(tail.word.size() + 1);
            w.push_back(e);
            w.insert(w.end(), tail.word.begin(), tail.word.end());
            out.push_back(Path{v, std::move(w), n});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool in_le(const KGraph& g, const Path& lambda, const Degree& n) {
    if (!leq(lambda.degree, n)) return false;
    VertexId s = source_of(g, lambda);
    for (int i = 0; i < g.rank(); ++i)
        if (lambda.degree[i] < n[i] && !g.edges_at(s, i + 1).empty()) return false;
    return true;
}

std::vector<Path> paths_le(const KGraph& g, VertexId v, const Degree& n) {
    std::vector<Path> out;
    for (const Degree& m : degrees_leq(n))
        for (const Path& p : paths_of_degree(g, v, m))
            if (in_le(g, p, n)) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<Path, Path> factorize_le(const KGraph& g, const Path& lambda, const Degree& m,
                                   const Degree& n) {
    if (!g.locally_convex())
        throw std::invalid_argument("factorize_le: graph is not locally convex");
    if (!in_le(g, lambda, m + n))
        throw std::invalid_argument("factorize_le: path is not in the <=(m+n) set");
    Degree cut = meet(m, lambda.degree);
    auto [mu, nu] = factorize(g, lambda, cut);
    if (!in_le(g, mu, m) || !in_le(g, nu, n))
        throw std::logic_error("factorize_le: split left the expected sets");
    return {mu, nu};
}

std::vector<Path> paths_by_total(const KGraph& g, VertexId v, int total_bound) {
    std::vector<Path> out;
    for (int t = 0; t <= total_bound; ++t) {
        std::vector<Path> layer;
        // All degrees with |d| == t, in lexicographic order.
        std::vector<Degree> degs;
        Degree box = Degree::uniform(g.rank(), t);
        for (const Degree& d : degrees_leq(box))
            if (d.total() == t) degs.push_back(d);
        for (const Degree& d : degs)
            for (const Path& p : paths_of_degree(g, v, d)) layer.push_back(p);
        std::sort(layer.begin(), layer.end());
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::string format_path(const KGraph& g, const Path& p) {
    if (p.is_vertex()) return g.vertex_name(p.range);
    std::string s;
    for (std::size_t i = 0; i < p.word.size(); ++i) {
        if (i) s += "*";
        s += g.edge(p.word[i]).id;
    }
    return s;
}

Path parse_path(const KGraph& g, const std::string& text) {
    if (text.find('*') == std::string::npos) {
        if (auto v = g.find_vertex(text)) return vertex_path(g, *v);
        if (auto e = g.find_edge(text)) return edge_path(g, *e);
        throw std::invalid_argument("unknown vertex or edge '" + text + "'");
    }
    std::vector<EdgeId> word;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
        auto e = g.find_edge(tok);
        if (!e) throw std::invalid_argument("unknown edge '" + tok + "'");
        word.push_back(*e);
    }
    if (word.empty()) throw std::invalid_argument("empty path literal");
    return path_from_word(g, g.edge(word.front()).range, word);
}

}  // namespace kg
