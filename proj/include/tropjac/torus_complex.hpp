// Cell complexes on the torus R^b / Z^b.
//
// Cells are kept as canonical polytope representatives: translate by the
// unique lattice vector putting the lex-smallest vertex in [0,1)^b. Incidence
// signs come from a fixed orientation convention (ordered difference basis at
// the lex-smallest vertex), which is translation invariant, so identification
// transport is always +1.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tropjac/polytope.hpp"
#include "tropjac/voronoi.hpp"

namespace tropjac {

struct TorusCell {
    Polytope poly;                   // canonical representative
    std::vector<std::string> labels; // sorted provenance flags, closed under faces
    std::map<int, Int> boundary;     // cells[dim-1] index -> incidence coefficient

    bool has_label(const std::string& l) const;
};

struct TorusCellComplex {
    int b = 0;
    std::vector<std::vector<TorusCell>> cells; // by dimension

    int top_dim() const { return static_cast<int>(cells.size()) - 1; }
    long cell_count() const;
    long cell_count(int dim) const;
    long flagged_count(const std::string& label) const;
};

/** Face of a polytope by vertex-index subset, without re-running the hull:
 *  inherited inequalities stay valid (some merely redundant). */
Polytope make_face(const Polytope& parent, const std::vector<int>& vertex_idx);

/** Canonical representative modulo Z^b; optional out-param receives the
 *  applied integer shift. */
Polytope canonical_torus_rep(const Polytope& p, IVec* shift = nullptr);

/** Membership of a torus point in a polytope, testing the lattice translates
 *  of x that can meet the polytope's bounding box. */
bool contains_mod_lattice(const Polytope& q, const Vec& x);

/** Closes generators under faces, identifies cells modulo Z^b, and computes
 *  incidence numbers; verifies boundary of boundary = 0. Labels propagate to
 *  all faces of a generator. */
TorusCellComplex build_torus_complex(int b,
                                     const std::vector<std::pair<Polytope, std::string>>& generators);

/** Adds `label` to every cell whose relative interior lies in some input
 *  polytope (cells must be unions of input pieces for this to be meaningful). */
void flag_cells(TorusCellComplex& complex, const std::vector<Polytope>& inputs,
                const std::string& label);

/** Image in the torus of the dimension <= d skeleton of the Voronoi cell. */
TorusCellComplex theta_skeleton(const VoronoiCell& cell, int d);

/** CW structure on the whole torus induced by the Voronoi tiling. */
TorusCellComplex voronoi_torus_complex(const VoronoiCell& cell);

/** Reference complex: d-skeleton of the cube CW torus; C(b,k) cells per
 *  dimension k <= d and all boundary maps zero. */
TorusCellComplex cube_torus_skeleton(int b, int d);

} // namespace tropjac
