#include "doctest.h"

#include "tropjac/error.hpp"
#include "tropjac/linalg.hpp"

using namespace tropjac;

namespace {

Mat from_rows(std::initializer_list<Vec> rows) { return Mat::from_rows(std::vector<Vec>(rows)); }

} // namespace

TEST_CASE("determinant, inverse, solve") {
    Mat m = from_rows({{Rat(2), Rat(1)}, {Rat(1), Rat(2)}});
    CHECK(det(m) == Rat(3));
    Mat inv = inverse(m);
    CHECK(mat_mul(m, inv) == Mat::identity(2));
    Vec x = solve_square(m, {Rat(1), Rat(0)});
    CHECK(x == Vec{Rat(2, 3), Rat(-1, 3)});

    Mat sing = from_rows({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}});
    CHECK(det(sing) == 0);
    CHECK_THROWS_AS(solve_square(sing, {Rat(1), Rat(1)}), VerificationError);
}

TEST_CASE("rref and rank") {
    Mat m = from_rows({{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}, {Rat(1), Rat(0), Rat(1)}});
    CHECK(rank(m) == 2);
    std::vector<int> pivots;
    Mat r = rref(m, &pivots);
    CHECK(pivots == std::vector<int>{0, 1});
    CHECK(r.at(0, 0) == Rat(1));
    CHECK(r.at(1, 0) == Rat(0));
}

TEST_CASE("nullspace vectors satisfy A x = 0") {
    Mat a = from_rows({{Rat(1), Rat(2), Rat(3)}, {Rat(0), Rat(1), Rat(1)}});
    auto ns = nullspace(a);
    REQUIRE(ns.size() == 1);
    Vec prod = mat_vec(a, ns[0]);
    for (const auto& v : prod) CHECK(v == 0);
}

TEST_CASE("solve_any handles underdetermined and inconsistent systems") {
    Mat a = from_rows({{Rat(1), Rat(1), Rat(0)}});
    auto s = solve_any(a, {Rat(5)});
    REQUIRE(s.has_value());
    CHECK((*s)[0] + (*s)[1] == Rat(5));

    Mat bad = from_rows({{Rat(1), Rat(0)}, {Rat(1), Rat(0)}});
    CHECK_FALSE(solve_any(bad, {Rat(0), Rat(1)}).has_value());
}

TEST_CASE("affine_rank") {
    CHECK(affine_rank({}) == -1);
    CHECK(affine_rank({{Rat(3), Rat(4)}}) == 0);
    CHECK(affine_rank({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)}}) == 1);
    CHECK(affine_rank({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}}) == 2);
}

TEST_CASE("greedy_independent keeps the first spanning subset") {
    std::vector<Vec> vs = {{Rat(1), Rat(0)}, {Rat(2), Rat(0)}, {Rat(1), Rat(1)}};
    CHECK(greedy_independent(vs) == std::vector<int>{0, 2});
}

TEST_CASE("primitive_integer normalizes sign and scale") {
    // Scales to coprime integers and flips so the first nonzero entry is positive.
    CHECK(primitive_integer({Rat(-2, 3), Rat(4, 3)}) == IVec{Int(1), Int(-2)});
    CHECK(primitive_integer({Rat(0), Rat(-5, 2)}) == IVec{Int(0), Int(1)});
    CHECK(primitive_integer({Rat(0), Rat(0)}) == IVec{Int(0), Int(0)});
}

TEST_CASE("perp_basis spans the orthogonal complement") {
    auto perp = perp_basis({{Rat(1), Rat(1), Rat(0)}}, 3);
    REQUIRE(perp.size() == 2);
    for (const auto& p : perp) CHECK(p[0] + p[1] == 0);
}

TEST_CASE("coords_in_rows round trip") {
    std::vector<Vec> basis = {{Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
    Vec c = coords_in_rows(basis, {Rat(2), Rat(5)});
    CHECK(c == Vec{Rat(2), Rat(3)});
    CHECK_THROWS_AS(coords_in_rows({{Rat(1), Rat(0)}}, Vec{Rat(0), Rat(1)}), VerificationError);
}
