// Exact polyhedral arrangement refinement on the torus: cut [0,1]^b by the
// supporting hyperplanes of the inputs (all lattice translates meeting the
// cube), plus the cube walls and the half-integer planes x_i = 1/2, then
// identify boundary faces modulo Z^b and flag the cells covered by each
// labeled input family.
#pragma once

#include <string>
#include <vector>

#include "tropjac/error.hpp"
#include "tropjac/torus_complex.hpp"

namespace tropjac {

struct ArrangementInput {
    std::vector<Polytope> polys; // torus representatives, rational data
    std::string label;           // flag set on every cell inside the union
};

/** Supporting hyperplanes of one polytope: affine-hull planes plus one plane
 *  through each facet (chosen not to contain the polytope's direction space). */
std::vector<Hyperplane> supporting_planes(const Polytope& p);

TorusCellComplex refine(const std::vector<ArrangementInput>& inputs, int b,
                        const Guards& guards = {},
                        const std::vector<Hyperplane>& extra_planes = {});

/** Serial reference implementation of refine (identical output). */
TorusCellComplex refine_serial(const std::vector<ArrangementInput>& inputs, int b,
                               const Guards& guards = {},
                               const std::vector<Hyperplane>& extra_planes = {});

} // namespace tropjac
