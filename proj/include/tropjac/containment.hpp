// Exact set containment in the torus: is a polytope covered by a union of
// cells modulo Z^b? Built on these tests: effectivity of divisor classes,
// the Baker-Norine style rank computed through the W_d loci, and matching
// two complexes up to translation.
#pragma once

#include <optional>
#include <vector>

#include "tropjac/divisor.hpp"
#include "tropjac/error.hpp"
#include "tropjac/symd.hpp"
#include "tropjac/torus_complex.hpp"

namespace tropjac {

/** Is p contained in the union of the lattice translates of the cover cells?
 *  Exact: p is refined by every candidate facet plane, which makes each piece
 *  either inside or essentially disjoint from each candidate, so centroid
 *  membership decides containment. */
bool union_contains(const std::vector<Polytope>& cover, const Polytope& p);

/** Lex-smallest torus translation v with |a| + v = |b| as subsets of the
 *  torus, if one exists among differences of 0-cells. A returned value is
 *  exact (verified by mutual union containment); candidates cover every
 *  translation whenever the sets have a corner or branch point, which pins
 *  0-cells onto 0-cells. */
std::optional<Vec> translate_match(const TorusCellComplex& a, const TorusCellComplex& b);

/** Whether the degree-d class with Abel-Jacobi image y contains an effective
 *  divisor, using a precomputed W_d (cells must come from the same Jacobian). */
bool is_effective_class(const JacobianData& jd, const Vec& y, int d,
                        const std::vector<WdCell>& wd);

bool is_effective_class(const JacobianData& jd, const Vec& y, int d, const Guards& guards = {});

/** Rank of the divisor class through the polyhedral criterion: the largest r
 *  with mu(D) - W_r contained in W_{d-r} (-1 when the class is not
 *  effective). Degrees d - r >= b are full-torus shortcuts. */
int divisor_rank(const JacobianData& jd, const Divisor& div, const Guards& guards = {});

} // namespace tropjac
