// Voronoi cell of the lattice Z^b under a positive definite rational form.
#pragma once

#include <vector>

#include "tropjac/error.hpp"
#include "tropjac/linalg.hpp"
#include "tropjac/polytope.hpp"

namespace tropjac {

struct VoronoiCell {
    int b = 0;
    std::vector<IVec> relevant; // facet-defining lattice vectors, both signs, lex sorted
    Polytope poly;              // the cell centered at the origin
    std::vector<std::vector<std::vector<int>>> faces; // face lattice of poly
};

/** Facet-defining lattice vectors of the Voronoi cell of Z^b under x^T G x:
 *  the nonzero vectors that are, together with their negatives, the unique
 *  minimizers of the form in their coset mod 2Z^b. Brute-force search over
 *  the ellipsoid x^T G x <= 4 b max(G_ii), which contains every coset minimum
 *  for b <= 4. */
std::vector<IVec> relevant_vectors(const Mat& gram, const Guards& guards = {});

/** Serial reference implementation (same contract, no threading). */
std::vector<IVec> relevant_vectors_serial(const Mat& gram, const Guards& guards = {});

/** Cell around 0 with facets lambda^T G x <= lambda^T G lambda / 2, full
 *  vertex set and face lattice. */
VoronoiCell voronoi_cell(const Mat& gram, const Guards& guards = {});

} // namespace tropjac
