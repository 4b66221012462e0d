#include "doctest.h"

#include "tropjac/arrangement.hpp"
#include "tropjac/chip_firing.hpp"
#include "tropjac/containment.hpp"
#include "tropjac/suite.hpp"
#include "tropjac/voronoi.hpp"

using namespace tropjac;

namespace {

GraphPoint vp(int v) {
    GraphPoint p;
    p.vertex = v;
    return p;
}

Polytope box2(Rat x0, Rat y0, Rat x1, Rat y1) {
    return polytope_from_points(2, {{x0, y0}, {x1, y0}, {x0, y1}, {x1, y1}});
}

} // namespace

TEST_CASE("union containment handles lattice wrap") {
    // Two half-width vertical bands covering the torus.
    std::vector<Polytope> cover = {box2(Rat(0), Rat(0), Rat(1, 2), Rat(1)),
                                   box2(Rat(1, 2), Rat(0), Rat(1), Rat(1))};
    CHECK(union_contains(cover, box2(Rat(1, 4), Rat(1, 4), Rat(3, 4), Rat(3, 4))));
    // A piece past x=1 is covered only through the shift by -1.
    CHECK(union_contains(cover, box2(Rat(7, 8), Rat(0), Rat(9, 8), Rat(1, 2))));

    std::vector<Polytope> left_only = {box2(Rat(0), Rat(0), Rat(1, 2), Rat(1))};
    CHECK(union_contains(left_only, box2(Rat(0), Rat(0), Rat(1, 2), Rat(1, 2))));
    CHECK_FALSE(union_contains(left_only, box2(Rat(1, 4), Rat(0), Rat(3, 4), Rat(1, 4))));
    CHECK_FALSE(union_contains(left_only, box2(Rat(7, 8), Rat(0), Rat(9, 8), Rat(1, 8))));

    // Covered on the torus even though no single lattice translate of either
    // rim contains the whole box.
    std::vector<Polytope> both_rims = {box2(Rat(0), Rat(0), Rat(1, 8), Rat(1)),
                                       box2(Rat(7, 8), Rat(0), Rat(1), Rat(1))};
    CHECK(union_contains(both_rims, box2(Rat(7, 8), Rat(0), Rat(9, 8), Rat(1))));
}

TEST_CASE("translate match recovers a known shift") {
    Polytope sq = box2(Rat(0), Rat(0), Rat(1, 2), Rat(1, 2));
    TorusCellComplex a = build_torus_complex(2, {{sq, "a"}});
    TorusCellComplex b = build_torus_complex(2, {{translate(sq, {Rat(1, 4), Rat(1, 4)}), "a"}});

    auto self = translate_match(a, a);
    REQUIRE(self.has_value());
    CHECK(*self == Vec{Rat(0), Rat(0)});

    auto shift = translate_match(a, b);
    REQUIRE(shift.has_value());
    CHECK(*shift == Vec{Rat(1, 4), Rat(1, 4)});

    // A smaller square is not a translate of the original.
    TorusCellComplex c = build_torus_complex(2, {{box2(Rat(0), Rat(0), Rat(1, 4), Rat(1, 4)), "a"}});
    CHECK_FALSE(translate_match(a, c).has_value());
}

TEST_CASE("theta skeleton is a translate of W1") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    VoronoiCell vor = voronoi_cell(jd.gram);
    TorusCellComplex theta1 = theta_skeleton(vor, 1);

    auto wd = wd_cells(jd, 1);
    std::vector<std::pair<Polytope, std::string>> gens;
    for (const auto& c : wd) gens.emplace_back(c.poly, "wd");
    TorusCellComplex w1 = build_torus_complex(2, gens);

    auto shift = translate_match(theta1, w1);
    REQUIRE(shift.has_value());
    // The matching shift takes the theta skeleton onto W_1; the reverse match
    // is the negated shift modulo Z^2.
    auto back = translate_match(w1, theta1);
    REQUIRE(back.has_value());
    Vec sum = vec_add(*shift, *back);
    for (Rat& x : sum) x = rat_frac(x);
    CHECK(sum == Vec(2, Rat(0)));
}

TEST_CASE("effective classes are recognized through W_d") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    auto wd = wd_cells(jd, 1);

    Divisor p;
    p.add(make_point(jd.graph, 0, Rat(1, 4)), Int(1));
    CHECK(is_effective_class(jd, aj_divisor(jd, p), 1, wd));
    CHECK(is_effective_class(jd, aj_divisor(jd, p), 1)); // guards overload

    CHECK_FALSE(is_effective_class(jd, {Rat(1, 2), Rat(1, 2)}, 1, wd));

    // Degree >= b: every class is effective.
    CHECK(is_effective_class(jd, {Rat(1, 2), Rat(1, 2)}, 2));
    CHECK(is_effective_class(jd, {Rat(1, 7), Rat(5, 7)}, 3));
}

TEST_CASE("polyhedral rank matches the chip-firing oracle on the theta graph") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    const MetricGraph& g = jd.graph;

    Divisor zero;
    Divisor point;
    point.add(vp(0), Int(1));
    Divisor k = canonical_divisor(g);
    Divisor minus;
    minus.add(vp(0), Int(1));
    minus.add(vp(1), Int(-1));
    Divisor deg3 = divisor_add(k, point);

    CHECK(divisor_rank(jd, zero) == 0);
    CHECK(divisor_rank(jd, point) == 0);
    CHECK(divisor_rank(jd, k) == 1);
    CHECK(divisor_rank(jd, minus) == -1);
    CHECK(divisor_rank(jd, deg3) == 1);

    for (const Divisor* d : {&zero, &point, &k, &minus, &deg3})
        CHECK(divisor_rank(jd, *d) == rank_oracle(g, *d, {}));
}
