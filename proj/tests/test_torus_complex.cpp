#include "doctest.h"

#include "tropjac/graph.hpp"
#include "tropjac/homology.hpp"
#include "tropjac/suite.hpp"
#include "tropjac/torus_complex.hpp"
#include "tropjac/voronoi.hpp"

using namespace tropjac;

namespace {

Polytope square01() {
    return polytope_from_points(
        2, {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
}

std::vector<long> free_ranks(const std::vector<HomologyResult>& h) {
    std::vector<long> r;
    for (const auto& x : h) r.push_back(x.free_rank);
    return r;
}

} // namespace

TEST_CASE("canonical_torus_rep puts the lex smallest vertex in the unit box") {
    Polytope p = polytope_from_points(2, {{Rat(5, 2), Rat(-3)}, {Rat(3), Rat(-5, 2)}});
    IVec shift;
    Polytope c = canonical_torus_rep(p, &shift);
    CHECK(c.vertices.front() == Vec{Rat(1, 2), Rat(0)});
    CHECK(shift == IVec{Int(-2), Int(3)});
}

TEST_CASE("contains_mod_lattice wraps around") {
    Polytope sq = square01();
    CHECK(contains_mod_lattice(sq, {Rat(7, 2), Rat(-2)}));
    Polytope small = polytope_from_points(
        2, {{Rat(0), Rat(0)}, {Rat(1, 4), Rat(0)}, {Rat(0), Rat(1, 4)}, {Rat(1, 4), Rat(1, 4)}});
    CHECK(contains_mod_lattice(small, {Rat(9, 8), Rat(17, 8)}));
    CHECK_FALSE(contains_mod_lattice(small, {Rat(1, 2), Rat(1, 2)}));
}

TEST_CASE("unit square glues to the torus CW structure") {
    TorusCellComplex c = build_torus_complex(2, {{square01(), "sq"}});
    REQUIRE(c.top_dim() == 2);
    CHECK(c.cell_count(0) == 1);
    CHECK(c.cell_count(1) == 2);
    CHECK(c.cell_count(2) == 1);
    CHECK(c.cells[2][0].has_label("sq"));
    CHECK(c.cells[0][0].has_label("sq")); // labels close under faces
    auto h = homology(chain_complex(c));
    CHECK(free_ranks(h) == std::vector<long>{1, 2, 1});
    for (const auto& x : h) CHECK(x.torsion.empty());
}

TEST_CASE("theta graph skeleton is the theta graph") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    VoronoiCell vor = voronoi_cell(jd.gram);
    TorusCellComplex th = theta_skeleton(vor, 1);
    CHECK(th.cell_count(0) == 2);
    CHECK(th.cell_count(1) == 3);
    auto h = homology(chain_complex(th));
    CHECK(free_ranks(h) == std::vector<long>{1, 2});

    TorusCellComplex full = voronoi_torus_complex(vor);
    CHECK(full.cell_count(0) == 2);
    CHECK(full.cell_count(1) == 3);
    CHECK(full.cell_count(2) == 1);
    CHECK(free_ranks(homology(chain_complex(full))) == std::vector<long>{1, 2, 1});
}

TEST_CASE("K4 skeleton counts") {
    JacobianData jd = jacobian_data(make_k4({}));
    VoronoiCell vor = voronoi_cell(jd.gram);
    TorusCellComplex th = theta_skeleton(vor, 1);
    CHECK(th.cell_count(0) == 6);
    CHECK(th.cell_count(1) == 12);
    auto h = homology(chain_complex(th));
    CHECK(h[1].free_rank == 7); // 12 - 6 + 1
    CHECK(h[0].free_rank == 1);

    TorusCellComplex full = voronoi_torus_complex(vor);
    CHECK(free_ranks(homology(chain_complex(full))) == std::vector<long>{1, 3, 3, 1});
}

TEST_CASE("cube_torus_skeleton has binomial cell counts and zero boundaries") {
    TorusCellComplex c = cube_torus_skeleton(3, 2);
    CHECK(c.cell_count(0) == 1);
    CHECK(c.cell_count(1) == 3);
    CHECK(c.cell_count(2) == 3);
    ChainComplexData cc = chain_complex(c);
    for (const auto& m : cc.boundary) CHECK(m.nnz() == 0);
    auto h = homology(cc);
    CHECK(free_ranks(h) == std::vector<long>{1, 3, 3});
}

TEST_CASE("make_face keeps membership") {
    Polytope sq = square01();
    auto faces = face_lattice(sq);
    Polytope edge = make_face(sq, faces[1][0]);
    CHECK(edge.dim == 1);
    CHECK(edge.vertices.size() == 2);
    for (const auto& v : edge.vertices) CHECK(polytope_contains(sq, v));
}

TEST_CASE("flag_cells marks only covered cells") {
    // Complex refined along x = 1/2, so every cell is inside or outside the half.
    Polytope left = polytope_from_points(
        2, {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1, 2), Rat(1)}});
    Polytope right = polytope_from_points(
        2, {{Rat(1, 2), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1, 2), Rat(1)}, {Rat(1), Rat(1)}});
    TorusCellComplex c = build_torus_complex(2, {{left, "L"}, {right, "R"}});
    flag_cells(c, {left}, "half");
    long in_half = 0, out_half = 0;
    for (size_t k = 0; k < c.cells.size(); ++k)
        for (const auto& cell : c.cells[k]) {
            bool inside = true;
            for (const auto& v : cell.poly.vertices)
                inside = inside && polytope_contains(left, v);
            if (cell.has_label("half")) {
                CHECK(inside);
                ++in_half;
            } else {
                CHECK_FALSE(inside);
                ++out_half;
            }
        }
    CHECK(in_half > 0);
    CHECK(out_half > 0);
}
