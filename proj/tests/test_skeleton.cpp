#include <doctest.h>

#include "corpus.hpp"
#include "kg/boundary.hpp"
#include "kg/skeleton.hpp"

using namespace kg;
using namespace kgtest;

TEST_CASE("parse reads back the cycle2 presentation") {
    Skeleton sk = load_skeleton_file(corpus_file("cycle2"));
    CHECK(sk.rank == 1);
    CHECK(sk.vertices.size() == 2);
    CHECK(sk.edges.size() == 2);
    CHECK(sk.squares.empty());
}

TEST_CASE("parse reads back the flipcomm square") {
    Skeleton sk = load_skeleton_file(corpus_file("flipcomm"));
    CHECK(sk.vertices.size() == 1);
    REQUIRE(sk.squares.size() == 1);
    CHECK(sk.squares[0].lhs_first == "f");
    CHECK(sk.squares[0].lhs_second == "g");
    CHECK(sk.squares[0].rhs_first == "g");
    CHECK(sk.squares[0].rhs_second == "f");
}

TEST_CASE("parse rejects structural errors with positions") {
    CHECK_THROWS_WITH_AS(parse_skeleton("rank 1\nvertex u\nedge a 1 u w\n"),
                         doctest::Contains("unknown vertex"), ParseError);
    CHECK_THROWS_WITH_AS(parse_skeleton("rank 1\nvertex u\nvertex u\n"),
                         doctest::Contains("duplicate vertex"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_skeleton("rank 2\nvertex u\nedge a 3 u u\n"),
        doctest::Contains("out of range"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_skeleton("rank 1\nvertex u\nedge a 1 u u\nedge a 1 u u\n"),
        doctest::Contains("duplicate edge"), ParseError);
    // Square over a non-composable pair.
    CHECK_THROWS_WITH_AS(
        parse_skeleton("rank 2\nvertex u\nvertex v\nedge f 1 u v\nedge g 2 u u\n"
                       "square f.g = g.f\n"),
        doctest::Contains("square endpoint mismatch"), ParseError);
}

TEST_CASE("validate computes flags on the corpus") {
    KGraph om = load("omega22");
    CHECK(om.locally_convex());
    CHECK(om.acyclic());
    CHECK(om.has_sources());
    CHECK(om.boundary_finite());

    KGraph fc = load("flipcomm");
    CHECK_FALSE(fc.acyclic());
    CHECK(fc.boundary_finite());
    CHECK_FALSE(fc.has_sources());

    KGraph c2 = load("cycle2");
    CHECK_FALSE(c2.acyclic());
    CHECK(c2.boundary_finite());

    KGraph ce = load("cycle1_entrance");
    CHECK_FALSE(ce.boundary_finite());
    CHECK(ce.regime_at(vx(ce, "u")) == BoundaryRegime::truncated);
    CHECK(ce.regime_at(vx(ce, "t")) == BoundaryRegime::acyclic);
}

TEST_CASE("validate rejects a square table that is not total") {
    Skeleton sk = load_skeleton_file(corpus_file("fliptwist"));
    sk.squares.pop_back();
    CHECK_THROWS_WITH_AS(validate(sk), doctest::Contains("square table not total"),
                         std::runtime_error);
}

TEST_CASE("validate rejects a non-bijective square table") {
    Skeleton sk = load_skeleton_file(corpus_file("fliptwist"));
    // Point two left sides at the same right side.
    sk.squares[0].rhs_first = "g2";
    sk.squares[0].rhs_second = "f2";
    CHECK_THROWS_WITH_AS(validate(sk), doctest::Contains("not bijective"), std::runtime_error);
}

TEST_CASE("validate rejects rank-0 skeletons") {
    Skeleton sk;
    sk.rank = 0;
    sk.vertices = {"u"};
    CHECK_THROWS_WITH_AS(validate(sk), doctest::Contains("rank-0"), std::runtime_error);
}

namespace {

// Single vertex, colors 1..3; the color-3 edges are permuted differently by
// the two lower colors, breaking route agreement.
Skeleton tricolor_skeleton(bool consistent) {
    Skeleton sk;
    sk.rank = 3;
    sk.vertices = {"v"};
    sk.edges = {{"f", 1, "v", "v"},  {"g", 2, "v", "v"},  {"h1", 3, "v", "v"},
                {"h2", 3, "v", "v"}, {"h3", 3, "v", "v"}};
    sk.squares.push_back({"f", "g", "g", "f"});
    // f swaps h1 and h2.
    sk.squares.push_back({"f", "h1", "h2", "f"});
    sk.squares.push_back({"f", "h2", "h1", "f"});
    sk.squares.push_back({"f", "h3", "h3", "f"});
    if (consistent) {
        sk.squares.push_back({"g", "h1", "h1", "g"});
        sk.squares.push_back({"g", "h2", "h2", "g"});
        sk.squares.push_back({"g", "h3", "h3", "g"});
    } else {
        // g swaps h1 and h3; the two actions do not commute.
        sk.squares.push_back({"g", "h1", "h3", "g"});
        sk.squares.push_back({"g", "h3", "h1", "g"});
        sk.squares.push_back({"g", "h2", "h2", "g"});
    }
    return sk;
}

}  // namespace

TEST_CASE("hexagon condition separates consistent from twisted squares") {
    CHECK_NOTHROW(validate(tricolor_skeleton(true)));
    CHECK_THROWS_WITH_AS(validate(tricolor_skeleton(false)), doctest::Contains("hexagon"),
                         std::runtime_error);
}

TEST_CASE("omega graphs validate with the expected shape") {
    KGraph o1 = omega(1, Degree(std::vector<int>{2}));
    CHECK(o1.vertex_count() == 3);
    CHECK(o1.edge_count() == 2);

    KGraph o2 = omega(2, Degree(std::vector<int>{1, 1}));
    CHECK(o2.vertex_count() == 4);
    CHECK(o2.edge_count() == 4);
    CHECK(o2.skeleton().squares.size() == 1);
    CHECK(o2.locally_convex());
    CHECK(o2.acyclic());
}

TEST_CASE("canonical serialization round-trips") {
    for (const char* name : kAllCorpus) {
        Skeleton sk = load_skeleton_file(corpus_file(name));
        std::string ser = serialize_skeleton(sk);
        CHECK(serialize_skeleton(parse_skeleton(ser)) == ser);
    }
}

TEST_CASE("square moves are involutive on every bicolored path") {
    for (const char* name : kAllCorpus) {
        KGraph g = load(name);
        for (EdgeId a = 0; a < g.edge_count(); ++a) {
            const Edge& ea = g.edge(a);
            for (int j = ea.color + 1; j <= g.rank(); ++j) {
                for (EdgeId b : g.edges_at(ea.source, j)) {
                    auto [hi, lo] = g.swap_up(a, b);
                    auto [a2, b2] = g.swap_down(hi, lo);
                    CHECK(a2 == a);
                    CHECK(b2 == b);
                }
            }
        }
    }
}

TEST_CASE("alignment diagnostic is recorded") {
    CHECK(load("omega22").max_mce_diagnostic() >= 1);
    CHECK(load("parallel2").max_mce_diagnostic() >= 1);
}
