#include "doctest.h"

#include <random>

#include "tropjac/chip_firing.hpp"
#include "tropjac/containment.hpp"
#include "tropjac/linear_series.hpp"
#include "tropjac/suite.hpp"

using namespace tropjac;

namespace {

GraphPoint vp(int v) {
    GraphPoint p;
    p.vertex = v;
    return p;
}

bool reduced_homology_zero(const std::vector<HomologyResult>& h) {
    if (h.empty()) return false;
    if (h[0].free_rank != 1 || !h[0].torsion.empty()) return false;
    for (size_t i = 1; i < h.size(); ++i)
        if (h[i].free_rank != 0 || !h[i].torsion.empty()) return false;
    return true;
}

} // namespace

TEST_CASE("canonical series of the theta graph") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    Divisor k = canonical_divisor(jd.graph);
    LinearSeries ls = linear_series(jd, k);
    REQUIRE(!ls.empty());
    CHECK(ls.degree == 2);
    CHECK(ls.dim() == divisor_rank(jd, k)); // dim |K| = r(K) = 1 here
    CHECK(ls.components() == 1);
    CHECK(reduced_homology_zero(ls.homology));
    // Every sampled divisor is effective, equivalent to K, of full degree.
    for (const auto& f : ls.faces) {
        CHECK(f.sample.effective());
        CHECK(f.sample.degree() == 2);
        CHECK(is_equivalent(jd, f.sample, k));
    }
}

TEST_CASE("series of a single point is a point") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    Divisor p;
    p.add(make_point(jd.graph, 0, Rat(1, 4)), Int(1));
    LinearSeries ls = linear_series(jd, p);
    REQUIRE(!ls.empty());
    CHECK(ls.dim() == 0);
    CHECK(ls.faces.size() == 1);
    CHECK(ls.faces[0].sample.coeff == p.coeff);
    CHECK(reduced_homology_zero(ls.homology));
}

TEST_CASE("degree zero series") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    Divisor zero;
    LinearSeries trivial = linear_series(jd, zero);
    REQUIRE(!trivial.empty());
    CHECK(trivial.dim() == 0);
    CHECK(trivial.faces.size() == 1);
    CHECK(trivial.faces[0].sample.coeff.empty());

    Divisor nontrivial;
    nontrivial.add(vp(0), Int(1));
    nontrivial.add(make_point(jd.graph, 1, Rat(1, 3)), Int(-1));
    LinearSeries empty_ls = linear_series(jd, nontrivial);
    CHECK(empty_ls.empty());
    CHECK(empty_ls.components() == 0);
    CHECK(empty_ls.dim() == -1);
}

TEST_CASE("ineffective classes give empty series") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    Divisor d;
    d.add(vp(0), Int(2));
    d.add(vp(1), Int(-1)); // degree 1 but rank -1 class
    if (divisor_rank(jd, d) < 0) {
        CHECK(linear_series(jd, d).empty());
    }
}

TEST_CASE("series dimension bounds the rank oracle") {
    // dim |D| >= r(D); strict on cells where the Abel-Jacobi fiber is larger
    // than the chip-firing moves (e.g. two points sliding along one circle).
    std::mt19937_64 rng(47);
    for (const auto& [name, graph] : suite_graphs()) {
        JacobianData jd = jacobian_data(graph);
        if (jd.b > 2) continue; // keep the fibers small in the unit suite
        for (int trial = 0; trial < 6; ++trial) {
            int deg = 1 + static_cast<int>(rand_below(rng, 2));
            Divisor d = random_effective_divisor(jd.graph, deg, rng);
            LinearSeries ls = linear_series(jd, d);
            REQUIRE(!ls.empty());
            CHECK(ls.dim() >= rank_oracle(jd.graph, d));
            CHECK(ls.dim() <= deg);
            CHECK(reduced_homology_zero(ls.homology));
        }
    }
}
