#include "doctest.h"

#include "tropjac/divisor.hpp"
#include "tropjac/error.hpp"
#include "tropjac/graph.hpp"
#include "tropjac/suite.hpp"

using namespace tropjac;

TEST_CASE("normalize validates and subdivides loops") {
    MetricGraph bad = make_theta(Rat(1), Rat(1), Rat(1));
    bad.edges[1].length = Rat(0);
    CHECK_THROWS_AS(normalize(bad), InvalidInput);

    MetricGraph dup = make_theta(Rat(1), Rat(1), Rat(1));
    dup.edges[1].id = "e0";
    CHECK_THROWS_AS(normalize(dup), InvalidInput);

    MetricGraph disc;
    disc.vertices = {"a", "b"};
    CHECK_THROWS_AS(normalize(disc), InvalidInput);

    MetricGraph g = normalize(make_dumbbell(Rat(1), Rat(1), Rat(2)));
    CHECK(g.vertices.size() == 4); // two loop midpoints added
    CHECK(g.edges.size() == 5);
    int halves = 0;
    for (const auto& e : g.edges) {
        CHECK(e.tail != e.head);
        if (e.id == "e0__a" || e.id == "e0__b") {
            CHECK(e.length == Rat(1, 2));
            ++halves;
        }
    }
    CHECK(halves == 2);
}

TEST_CASE("genus") {
    CHECK(genus(normalize(make_theta(Rat(1), Rat(1), Rat(1)))) == 2);
    CHECK(genus(normalize(make_k4({}))) == 3);
    CHECK(genus(normalize(make_bouquet({Rat(1)}))) == 1);
    MetricGraph path;
    path.vertices = {"a", "b"};
    path.edges.push_back({"e0", 0, 1, Rat(2)});
    CHECK(genus(normalize(path)) == 0);
    CHECK_THROWS_WITH_AS(jacobian_data(path), doctest::Contains("genus 0"), InvalidInput);
}

TEST_CASE("theta graph Gram matrix") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    REQUIRE(jd.b == 2);
    Mat expect = Mat::from_rows({{Rat(2), Rat(1)}, {Rat(1), Rat(2)}});
    CHECK(jd.gram == expect);
    CHECK(det(jd.gram) == Rat(3));
    CHECK(jd.convention == "lex-tree-v1");
}

TEST_CASE("K4 Gram matrix") {
    JacobianData jd = jacobian_data(make_k4({}));
    REQUIRE(jd.b == 3);
    Mat expect = Mat::from_rows(
        {{Rat(3), Rat(1), Rat(-1)}, {Rat(1), Rat(3), Rat(1)}, {Rat(-1), Rat(1), Rat(3)}});
    CHECK(jd.gram == expect);
    CHECK(det(jd.gram) == Rat(16));
}

TEST_CASE("doubled C4 Gram matrix") {
    JacobianData jd = jacobian_data(make_doubled_c4({}));
    REQUIRE(jd.b == 3);
    Mat expect = Mat::from_rows(
        {{Rat(2), Rat(0), Rat(-1)}, {Rat(0), Rat(2), Rat(-1)}, {Rat(-1), Rat(-1), Rat(4)}});
    CHECK(jd.gram == expect);
    CHECK(det(jd.gram) == Rat(12));
}

TEST_CASE("bouquet Gram is diagonal in the loop lengths") {
    JacobianData jd = jacobian_data(make_bouquet({Rat(1), Rat(3, 2)}));
    Mat expect = Mat::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(3, 2)}});
    CHECK(jd.gram == expect);
}

TEST_CASE("tree edges satisfy the velocity increment identity") {
    for (const auto& ng : suite_graphs()) {
        JacobianData jd = jacobian_data(ng.graph);
        for (int e : jd.tree_edges) {
            const Edge& ed = jd.graph.edges[e];
            Vec lhs(jd.b), rhs(jd.b);
            for (int i = 0; i < jd.b; ++i) {
                lhs[i] = jd.mu_vertex[ed.head][i] - jd.mu_vertex[ed.tail][i];
                rhs[i] = jd.velocity[e][i] * ed.length;
            }
            CHECK(lhs == rhs);
        }
        CHECK(jd.mu_vertex[jd.graph.basepoint] == Vec(jd.b, Rat(0)));
    }
}

TEST_CASE("abel_jacobi_point interpolates along an edge") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    GraphPoint p = make_point(jd.graph, 1, Rat(1, 4));
    Vec mu = abel_jacobi_point(jd, p);
    Vec expect(jd.b);
    for (int i = 0; i < jd.b; ++i)
        expect[i] = jd.mu_vertex[jd.graph.edges[1].tail][i] + jd.velocity[1][i] * Rat(1, 4);
    CHECK(mu == expect);
}

TEST_CASE("make_point collapses endpoints, locate_point resolves loop halves") {
    MetricGraph g = normalize(make_dumbbell(Rat(1), Rat(1), Rat(1)));
    GraphPoint end = make_point(g, 0, g.edges[0].length);
    CHECK(end.is_vertex());

    GraphPoint far = locate_point(g, "e0", Rat(3, 4)); // past the loop midpoint
    CHECK_FALSE(far.is_vertex());
    CHECK(g.edges[far.edge].id == "e0__b");
    CHECK_THROWS_AS(locate_point(g, "nope", Rat(0)), InvalidInput);
    CHECK_THROWS_AS(locate_point(g, "e0", Rat(7)), InvalidInput);
}

TEST_CASE("cycles hit their defining non-tree edge with coefficient one") {
    JacobianData jd = jacobian_data(make_k4({}));
    REQUIRE(jd.nontree_edges.size() == 3);
    for (int i = 0; i < jd.b; ++i) {
        CHECK(jd.cycles[i][jd.nontree_edges[i]] == 1);
        for (int j = 0; j < jd.b; ++j)
            if (j != i) CHECK(jd.cycles[i][jd.nontree_edges[j]] == 0);
    }
}
