// Cells of the d-th symmetric power of a metric graph and their Abel-Jacobi
// images: the effective locus W_d is a finite union of zonotopes in the torus,
// one per multiset of edges.
#pragma once

#include <utility>
#include <vector>

#include "tropjac/error.hpp"
#include "tropjac/graph.hpp"
#include "tropjac/polytope.hpp"

namespace tropjac {

/** A cell of Sym^d: d points distributed over edges with multiplicities. */
struct SymCell {
    std::vector<std::pair<int, int>> mult; // (edge index, multiplicity >= 1), indices increasing

    int degree() const;
};

/** All C(|E|+d-1, d) cells in lexicographic order. */
std::vector<SymCell> sym_cells(const MetricGraph& g, int d, const Guards& guards = {});

/** Affine parametrization of mu on a cell: x = base + sum_i t_i * dir_i with
 *  t_i in [0, bound_i]; one generator per distinct edge. */
struct AffineCellMap {
    Vec base;
    std::vector<std::pair<Vec, Rat>> gens; // (direction, parameter bound)
};

AffineCellMap aj_on_cell(const JacobianData& jd, const SymCell& cell);

struct WdCell {
    SymCell source;     // first cell (in enumeration order) with this image
    AffineCellMap map;  // parametrization for that source
    Polytope poly;      // canonical torus representative of the image zonotope
};

/** Image cells of W_d: zonotope per sym cell, identified modulo Z^b, with
 *  duplicates and cells contained in another single cell removed. The union
 *  of the returned cells is exactly W_d. */
std::vector<WdCell> wd_cells(const JacobianData& jd, int d, const Guards& guards = {});

/** Serial reference implementation of wd_cells (identical output). */
std::vector<WdCell> wd_cells_serial(const JacobianData& jd, int d, const Guards& guards = {});

} // namespace tropjac
