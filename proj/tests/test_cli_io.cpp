#include "doctest.h"

#include <sstream>

#include "tropjac/json_io.hpp"
#include "tropjac/suite.hpp"

using namespace tropjac;

TEST_CASE("rational parsing accepts fractions, integers, and json numbers") {
    CHECK(rat_from_json(Json("3/4")) == Rat(3, 4));
    CHECK(rat_from_json(Json("-7/2")) == Rat(-7, 2));
    CHECK(rat_from_json(Json("5")) == Rat(5));
    CHECK(rat_from_json(Json(-12)) == Rat(-12));
    CHECK(int_from_json(Json("42")) == 42);
    CHECK(int_from_json(Json(-3)) == -3);

    CHECK_THROWS_AS(rat_from_json(Json("1/0")), InvalidInput);
    CHECK_THROWS_AS(rat_from_json(Json("abc")), InvalidInput);
    CHECK_THROWS_AS(rat_from_json(Json(0.5)), InvalidInput);
}

TEST_CASE("graph json round trip") {
    MetricGraph g = make_dumbbell(Rat(1), Rat(3, 4), Rat(3, 2));
    Json j = graph_json(g);
    MetricGraph back = graph_from_json(j);
    REQUIRE(back.vertices == g.vertices);
    REQUIRE(back.edges.size() == g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i) {
        CHECK(back.edges[i].id == g.edges[i].id);
        CHECK(back.edges[i].tail == g.edges[i].tail);
        CHECK(back.edges[i].head == g.edges[i].head);
        CHECK(back.edges[i].length == g.edges[i].length);
    }
    CHECK(back.basepoint == g.basepoint);
}

TEST_CASE("graph json rejects malformed documents") {
    Json ok = {{"vertices", {"a", "b"}},
               {"edges", {{{"id", "e"}, {"tail", "a"}, {"head", "b"}, {"length", "1"}}}}};
    CHECK(graph_from_json(ok).edges.size() == 1);

    Json bad_vertex = ok;
    bad_vertex["edges"][0]["head"] = "zz";
    CHECK_THROWS_AS(graph_from_json(bad_vertex), InvalidInput);

    Json missing = ok;
    missing["edges"][0].erase("length");
    CHECK_THROWS_AS(graph_from_json(missing), InvalidInput);

    CHECK_THROWS_AS(graph_from_json(Json::array()), InvalidInput);
}

TEST_CASE("divisor json resolves subdivided loop ids") {
    MetricGraph g = normalize(make_dumbbell(Rat(1), Rat(3, 4), Rat(3, 2)));
    Json j = Json::array();
    j.push_back({{"vertex", "v0"}, {"coeff", 2}});
    // Offset 3/4 along the original loop e0 of length 1: lands on e0__b.
    j.push_back({{"edge", "e0"}, {"offset", "3/4"}, {"coeff", -1}});
    Divisor d = divisor_from_json(j, g);
    CHECK(d.degree() == 1);

    GraphPoint expect = locate_point(g, "e0", Rat(3, 4));
    CHECK(expect.edge == g.edge_index("e0__b"));
    CHECK(d.coeff.at(expect) == -1);

    Json bad = Json::array();
    bad.push_back({{"vertex", "nope"}, {"coeff", 1}});
    CHECK_THROWS_AS(divisor_from_json(bad, g), InvalidInput);
}

TEST_CASE("decimal strings are truncated fixed point") {
    CHECK(decimal_string(Rat(1, 3)) == "0.333333333333");
    CHECK(decimal_string(Rat(-1, 4)) == "-0.250000000000");
    CHECK(decimal_string(Rat(5, 2)) == "2.500000000000");
    CHECK(decimal_string(Rat(5, 2), 0) == "2");
    CHECK(decimal_string(Rat(0), 3) == "0.000");
}

TEST_CASE("fnv1a64 reference values") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("report dumps are key sorted and stable") {
    Json j;
    j["zeta"] = 1;
    j["alpha"] = {{"b", 2}, {"a", 1}};
    std::string s = dump_report(j);
    CHECK(s == "{\n  \"alpha\": {\n    \"a\": 1,\n    \"b\": 2\n  },\n  \"zeta\": 1\n}\n");
    CHECK(dump_report(j) == s);
}

TEST_CASE("report header carries the run parameters") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    Guards guards;
    Json h = report_header("jacobian", "deadbeef00000000", jd, guards, 7);
    CHECK(h["command"] == "jacobian");
    CHECK(h["input_hash"] == "deadbeef00000000");
    CHECK(h["convention"] == "lex-tree-v1");
    CHECK(h["seed"] == 7);
    CHECK(h["guards"]["b_arrangement"] == guards.max_b_arrangement);
    CHECK(h["guards"]["oracle"] == guards.max_oracle_vertices);
}

TEST_CASE("off export shapes") {
    Polytope square = polytope_from_points(
        2, {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
    std::string off = off_of_polytope(square);
    std::istringstream in(off);
    std::string magic;
    long nv = 0, nf = 0, ne = 0;
    in >> magic >> nv >> nf >> ne;
    CHECK(magic == "OFF");
    CHECK(nv == 4);
    CHECK(nf == 1);

    Polytope cube = polytope_from_points(
        3, {{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)},
            {Rat(1), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}, {Rat(1), Rat(0), Rat(1)},
            {Rat(0), Rat(1), Rat(1)}, {Rat(1), Rat(1), Rat(1)}});
    std::istringstream in3(off_of_polytope(cube));
    in3 >> magic >> nv >> nf >> ne;
    CHECK(nv == 8);
    CHECK(nf == 6);

    Polytope seg = polytope_from_points(2, {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 2)}});
    std::string soff = off_of_polytope(seg);
    CHECK(soff.find("OFF") == 0);
    CHECK(soff.find("0.500000000000") != std::string::npos);

    Polytope high = polytope_from_points(4, {{Rat(0), Rat(0), Rat(0), Rat(0)}});
    CHECK_THROWS_AS(off_of_polytope(high), InvalidInput);
}

TEST_CASE("suite graphs have the advertised genera") {
    auto graphs = suite_graphs();
    REQUIRE(graphs.size() == 6);
    CHECK(graphs[0].name == "bouquet2");
    CHECK(genus(normalize(graphs[0].graph)) == 2);
    CHECK(genus(normalize(graphs[1].graph)) == 3);
    CHECK(genus(normalize(graphs[2].graph)) == 2); // theta
    CHECK(genus(normalize(graphs[3].graph)) == 2); // dumbbell
    CHECK(genus(normalize(graphs[4].graph)) == 3); // K4
    CHECK(genus(normalize(graphs[5].graph)) == 3); // doubled C4

    auto types = trivalent_genus3_types({Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)});
    CHECK(types.size() == 5);
    for (const auto& t : types) {
        MetricGraph g = normalize(t.graph);
        CHECK(genus(g) == 3);
        // Trivalent: every vertex of the raw graph has degree 3.
        MetricGraph raw = t.graph;
        for (size_t v = 0; v < raw.vertices.size(); ++v) {
            int deg = 0;
            for (const auto& e : raw.edges) {
                if (e.tail == static_cast<int>(v)) ++deg;
                if (e.head == static_cast<int>(v)) ++deg;
            }
            CHECK(deg == 3);
        }
    }
}
