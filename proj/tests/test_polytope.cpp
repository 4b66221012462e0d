#include "doctest.h"

#include <algorithm>

#include "tropjac/error.hpp"
#include "tropjac/polytope.hpp"

using namespace tropjac;

namespace {

Polytope unit_square() {
    return polytope_from_points(
        2, {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
}

Polytope unit_cube() {
    std::vector<Vec> pts;
    for (int m = 0; m < 8; ++m)
        pts.push_back({Rat(m & 1), Rat((m >> 1) & 1), Rat((m >> 2) & 1)});
    return polytope_from_points(3, pts);
}

} // namespace

TEST_CASE("hull drops interior and duplicate points") {
    std::vector<Vec> pts = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)},
                            {Rat(1), Rat(1)}, {Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(1)}};
    Polytope p = polytope_from_points(2, pts);
    CHECK(p.dim == 2);
    CHECK(p.vertices.size() == 4);
    CHECK(p.facets.size() == 4);
    CHECK(std::is_sorted(p.vertices.begin(), p.vertices.end()));
}

TEST_CASE("lower dimensional hulls carry affine equations") {
    Polytope seg = polytope_from_points(2, {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
    CHECK(seg.dim == 1);
    REQUIRE(seg.aff_eqs.size() == 1);
    CHECK(hyperplane_eval(seg.aff_eqs[0], {Rat(1, 2), Rat(1, 2)}) == 0);

    Polytope pt = polytope_from_points(2, {{Rat(1, 3), Rat(2, 3)}});
    CHECK(pt.dim == 0);
    CHECK(pt.aff_eqs.size() == 2);

    Polytope empty = polytope_from_points(2, {});
    CHECK(empty.empty());
}

TEST_CASE("face lattice of the cube") {
    Polytope c = unit_cube();
    auto faces = face_lattice(c);
    REQUIRE(faces.size() == 4);
    CHECK(faces[0].size() == 8);
    CHECK(faces[1].size() == 12);
    CHECK(faces[2].size() == 6);
    CHECK(faces[3].size() == 1);
}

TEST_CASE("vertices_from_hrep recovers the simplex") {
    std::vector<Hyperplane> ineqs = {
        make_halfspace({Rat(-1), Rat(0)}, Rat(0)), // x >= 0
        make_halfspace({Rat(0), Rat(-1)}, Rat(0)), // y >= 0
        make_halfspace({Rat(1), Rat(1)}, Rat(1)),  // x + y <= 1
    };
    auto verts = vertices_from_hrep(2, {}, ineqs);
    Polytope p = polytope_from_points(2, verts);
    CHECK(p.vertices.size() == 3);
    CHECK(polytope_contains(p, {Rat(1, 4), Rat(1, 4)}));
    CHECK_FALSE(polytope_contains(p, {Rat(3, 4), Rat(3, 4)}));
}

TEST_CASE("make_halfspace produces primitive normals") {
    Hyperplane h = make_halfspace({Rat(2, 3), Rat(-4, 3)}, Rat(2));
    CHECK(h.normal == IVec{Int(1), Int(-2)});
    CHECK(h.offset == Rat(3));
}

TEST_CASE("split_polytope cuts the square along a diagonal") {
    Polytope sq = unit_square();
    Hyperplane diag = make_halfspace({Rat(1), Rat(-1)}, Rat(0)); // x <= y side first
    auto [lo, hi] = split_polytope(sq, diag);
    CHECK(lo.dim == 2);
    CHECK(hi.dim == 2);
    CHECK(lo.vertices.size() == 3);
    CHECK(hi.vertices.size() == 3);

    // A polytope inside the plane goes entirely to the lo side.
    Polytope seg = polytope_from_points(2, {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
    auto [slo, shi] = split_polytope(seg, diag);
    CHECK(slo.dim == 1);
    CHECK(shi.empty());

    // Strictly one-sided input comes back untouched on that side.
    Hyperplane far = make_halfspace({Rat(1), Rat(0)}, Rat(5));
    auto [flo, fhi] = split_polytope(sq, far);
    CHECK(flo.vertices == sq.vertices);
    CHECK(fhi.empty());
}

TEST_CASE("translate and centroid") {
    Polytope sq = unit_square();
    Polytope t = translate(sq, {Rat(3), Rat(-1, 2)});
    CHECK(t.vertices.front() == Vec{Rat(3), Rat(-1, 2)});
    CHECK(t.centroid() == Vec{Rat(7, 2), Rat(0)});
    CHECK(polytope_contains(t, t.centroid()));
}

TEST_CASE("triangulate_fan covers the square") {
    auto tris = triangulate_fan(unit_square());
    CHECK(tris.size() == 2);
    for (const auto& t : tris) CHECK(t.size() == 3);
}

TEST_CASE("polytope_key is invariant under input order") {
    Polytope a = polytope_from_points(
        2, {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
    Polytope b = polytope_from_points(
        2, {{Rat(1), Rat(1)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(0), Rat(0)}});
    CHECK(polytope_key(a) == polytope_key(b));
    Polytope c = polytope_from_points(2, {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    CHECK(polytope_key(a) != polytope_key(c));
}
