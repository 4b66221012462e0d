#include "doctest.h"

#include "tropjac/json_io.hpp"
#include "tropjac/lefschetz.hpp"
#include "tropjac/suite.hpp"

using namespace tropjac;

TEST_CASE("theta graph, d=1: relative homology vanishes and H1 surjects") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    TorusCellComplex complex;
    ConnectivityReport rep = lefschetz_check(jd, 1, {}, &complex);

    CHECK(rep.b == 2);
    CHECK(rep.d == 1);
    CHECK(rep.pass);
    CHECK(rep.vanishing);
    CHECK(rep.h1_required_ok);
    CHECK(rep.les_ok);
    CHECK(rep.sub_torus_match);

    CHECK(rep.pair[0].free_rank == 0);
    CHECK(rep.pair[1].free_rank == 0);
    CHECK(rep.pair[0].torsion.empty());
    CHECK(rep.pair[1].torsion.empty());
    // H_2 of the pair survives: the quotient is a 2-sphere-like top class.
    CHECK(rep.pair[2].free_rank > 0);

    CHECK(rep.h1.k == 1);
    CHECK(rep.h1.total_rank == 2);
    CHECK(rep.h1.map_rank == 2);
    CHECK(rep.h1.surjective);
    CHECK(rep.h1.z_certified);
    // W_1 of the theta graph has first homology of rank 2: surjective but not
    // injective is impossible at equal rank over Z only when torsion appears;
    // here the map is an isomorphism.
    CHECK(rep.h1.sub_free_rank == 2);
    CHECK(rep.h1.injective);

    CHECK(rep.cells_total == complex.cell_count());
    CHECK(rep.cells_flagged == complex.flagged_count("wd"));
    CHECK(rep.map_ranks.size() == static_cast<size_t>(rep.b) + 1);
}

TEST_CASE("bouquet of three circles, d=2: H1 is an isomorphism") {
    JacobianData jd = jacobian_data(make_bouquet({Rat(1), Rat(1), Rat(1)}));
    ConnectivityReport rep = lefschetz_check(jd, 2);
    CHECK(rep.b == 3);
    CHECK(rep.pass);
    CHECK(rep.vanishing);
    for (int i = 0; i <= 2; ++i) {
        CHECK(rep.pair[i].free_rank == 0);
        CHECK(rep.pair[i].torsion.empty());
    }
    CHECK(rep.h1.surjective);
    CHECK(rep.h1.injective);
    CHECK(rep.h1.sub_free_rank == 3);
    CHECK(rep.sub_torus_match); // H_i(W_2) free of rank C(3,i) for i <= 2
}

TEST_CASE("dumbbell, d=1: passes with the bridge contracted by mu") {
    JacobianData jd = jacobian_data(make_dumbbell(Rat(1), Rat(3, 4), Rat(3, 2)));
    ConnectivityReport rep = lefschetz_check(jd, 1);
    CHECK(rep.pass);
    CHECK(rep.vanishing);
    CHECK(rep.h1_required_ok);
    // W_1 of the dumbbell is two circles joined at a point: rank 2 surjecting
    // onto H_1(T^2).
    CHECK(rep.h1.sub_free_rank == 2);
    CHECK(rep.h1.surjective);
}

TEST_CASE("d must be at least one") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    CHECK_THROWS_AS(lefschetz_check(jd, 0), InvalidInput);
    CHECK_THROWS_AS(lefschetz_check(jd, -1), InvalidInput);
}

TEST_CASE("serial pipeline produces the identical report") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    ConnectivityReport a = lefschetz_check(jd, 1);
    ConnectivityReport b = lefschetz_check_serial(jd, 1);
    CHECK(dump_report(to_json(a)) == dump_report(to_json(b)));
}
