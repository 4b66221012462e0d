// Complete linear series |D|: all effective divisors equivalent to D, glued
// from the Abel-Jacobi fibers over the cells of Sym^d into a finite polyhedral
// complex. Homology is computed on the order complex of the face poset, which
// is a barycentric model of the realization.
#pragma once

#include <string>
#include <vector>

#include "tropjac/divisor.hpp"
#include "tropjac/error.hpp"
#include "tropjac/graph.hpp"
#include "tropjac/homology.hpp"

namespace tropjac {

struct SeriesFace {
    std::string key; // canonical corner-divisor pattern identifying the face
    int dim = 0;
    Divisor sample;  // divisor at the face centroid
};

struct LinearSeries {
    Int degree = 0;
    std::vector<SeriesFace> faces; // sorted by (dim, key)
    std::vector<long> faces_by_dim;
    std::vector<HomologyResult> homology; // of the realization; empty series -> empty

    bool empty() const { return faces.empty(); }
    int dim() const { return static_cast<int>(faces_by_dim.size()) - 1; }
    long components() const { return homology.empty() ? 0 : homology[0].free_rank; }
};

/** Builds |div| and its homology; verifies that fiber cells glue along unique
 *  maximal common faces (a polyhedral-complex certificate). */
LinearSeries linear_series(const JacobianData& jd, const Divisor& div, const Guards& guards = {});

} // namespace tropjac
