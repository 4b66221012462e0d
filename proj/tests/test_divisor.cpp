#include "doctest.h"

#include <random>

#include "tropjac/divisor.hpp"
#include "tropjac/error.hpp"
#include "tropjac/suite.hpp"

using namespace tropjac;

namespace {

GraphPoint vp(int v) {
    GraphPoint p;
    p.vertex = v;
    return p;
}

} // namespace

TEST_CASE("divisor arithmetic and degree") {
    Divisor d;
    d.add(vp(0), Int(2));
    d.add(vp(1), Int(-1));
    CHECK(d.degree() == 1);
    CHECK_FALSE(d.effective());

    d.add(vp(1), Int(1)); // cancels to zero, entry must vanish
    CHECK(d.coeff.size() == 1);
    CHECK(d.effective());

    Divisor s = divisor_scale(d, Int(3));
    CHECK(s.degree() == 6);
    Divisor sum = divisor_add(d, s);
    CHECK(sum.degree() == 8);
}

TEST_CASE("canonical divisor has degree 2g-2 and sits on branch vertices") {
    for (const auto& [name, graph] : suite_graphs()) {
        MetricGraph g = normalize(graph);
        Divisor k = canonical_divisor(g);
        CHECK(k.degree() == 2 * genus(g) - 2);
        for (const auto& [p, c] : k.coeff) {
            CHECK(p.vertex >= 0);
            CHECK(c == g.degree(p.vertex) - 2);
        }
    }
}

TEST_CASE("div of a hand-built function on the theta graph") {
    // Unit theta, f = 0 at v0, slopes +1 along e0 and -1 along e1, constant on e2.
    // Then f(v1) computed along e0 is 1 but along e1 is -1: inconsistent.
    MetricGraph g = normalize(make_theta(Rat(1), Rat(1), Rat(1)));
    PLFunction bad;
    bad.edges.resize(3);
    bad.edges[0] = {{}, {Int(1)}};
    bad.edges[1] = {{}, {Int(-1)}};
    bad.edges[2] = {{}, {Int(0)}};
    CHECK_THROWS_AS(pl_vertex_values(g, bad), InvalidInput);

    // Consistent: slope +1 on e0 up to the midpoint then -1 back down, 0 elsewhere.
    PLFunction f;
    f.edges.resize(3);
    f.edges[0] = {{Rat(1, 2)}, {Int(1), Int(-1)}};
    f.edges[1] = {{}, {Int(0)}};
    f.edges[2] = {{}, {Int(0)}};
    auto vals = pl_vertex_values(g, f);
    CHECK(vals[0] == 0);
    CHECK(vals[1] == 0);

    Divisor d = div_of(g, f);
    // The tent peak gets -2; each theta vertex gets the +1 outgoing slope of e0.
    GraphPoint mid = make_point(g, g.edge_index("e0"), Rat(1, 2));
    CHECK(d.coeff.at(mid) == -2);
    CHECK(d.coeff.at(vp(0)) == 1);
    CHECK(d.coeff.at(vp(1)) == 1);
    CHECK(d.degree() == 0);
}

TEST_CASE("principal divisors have degree zero") {
    std::mt19937_64 rng(101);
    for (const auto& [name, graph] : suite_graphs()) {
        MetricGraph g = normalize(graph);
        for (int trial = 0; trial < 40; ++trial) {
            PLFunction f = random_pl_function(g, rng);
            CHECK(div_of(g, f).degree() == 0);
        }
    }
}

TEST_CASE("divisors shifted by principal divisors stay equivalent") {
    std::mt19937_64 rng(202);
    for (const auto& [name, graph] : suite_graphs()) {
        JacobianData jd = jacobian_data(graph);
        const MetricGraph& g = jd.graph;
        for (int trial = 0; trial < 20; ++trial) {
            Divisor d = random_effective_divisor(g, 2, rng);
            PLFunction f = random_pl_function(g, rng);
            Divisor e = divisor_add(d, div_of(g, f));
            CHECK(is_equivalent(jd, d, e));
        }
    }
}

TEST_CASE("equivalence rejects degree and class mismatches") {
    MetricGraph g = normalize(make_theta(Rat(1), Rat(1), Rat(1)));
    JacobianData jd = jacobian_data(g);

    Divisor a;
    a.add(vp(0), Int(1));
    Divisor two_a = divisor_scale(a, Int(2));
    CHECK_FALSE(is_equivalent(jd, a, two_a)); // degrees differ

    Divisor b;
    b.add(make_point(g, g.edge_index("e0"), Rat(1, 3)), Int(1));
    // The theta graph has no bridges, so distinct points are never equivalent.
    CHECK_FALSE(is_equivalent(jd, a, b));
    CHECK(is_equivalent(jd, a, a));
}

TEST_CASE("abel-jacobi image of a divisor lands in the fundamental cube") {
    std::mt19937_64 rng(303);
    for (const auto& [name, graph] : suite_graphs()) {
        JacobianData jd = jacobian_data(graph);
        const MetricGraph& g = jd.graph;
        for (int trial = 0; trial < 10; ++trial) {
            Divisor d = random_effective_divisor(g, 1 + static_cast<int>(rand_below(rng, 3)), rng);
            Vec y = aj_divisor(jd, d);
            REQUIRE(static_cast<int>(y.size()) == jd.b);
            for (const Rat& c : y) {
                CHECK(c >= 0);
                CHECK(c < 1);
            }
        }
        // The basepoint itself maps to the origin.
        Divisor base;
        base.add(vp(g.basepoint), Int(1));
        CHECK(aj_divisor(jd, base) == Vec(jd.b, Rat(0)));
    }
}

TEST_CASE("random helpers are deterministic for a fixed seed") {
    MetricGraph g = normalize(make_dumbbell(Rat(1), Rat(3, 4), Rat(3, 2)));
    std::mt19937_64 r1(42), r2(42);
    Divisor d1 = random_effective_divisor(g, 3, r1);
    Divisor d2 = random_effective_divisor(g, 3, r2);
    CHECK(d1.coeff == d2.coeff);
    CHECK(d1.degree() == 3);
    CHECK(d1.effective());
}
