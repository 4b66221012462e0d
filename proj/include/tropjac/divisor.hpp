// Divisors on metric graphs, piecewise linear functions with integer slopes,
// and linear equivalence through the Abel-Jacobi map.
#pragma once

#include <map>
#include <random>

#include "tropjac/graph.hpp"

namespace tropjac {

struct Divisor {
    std::map<GraphPoint, Int> coeff; // canonical points -> nonzero coefficient

    Int degree() const;
    void add(const GraphPoint& p, const Int& c);
    bool effective() const;
};

Divisor divisor_add(const Divisor& a, const Divisor& b);
Divisor divisor_scale(const Divisor& a, const Int& s);

/** K = sum_v (deg(v) - 2) v on the working graph. */
Divisor canonical_divisor(const MetricGraph& g);

/** Piecewise linear function on the working graph: per edge, strictly
 *  increasing interior breakpoints and one integer slope per segment
 *  (tail -> head per unit length). */
struct PLFunction {
    struct EdgeData {
        std::vector<Rat> breaks;
        std::vector<Int> slopes; // breaks.size() + 1 entries
    };
    std::vector<EdgeData> edges; // one entry per edge, in edge order
};

/** Validates shape and global continuity; returns the vertex values relative
 *  to f(basepoint) = 0. Throws InvalidInput if the slope data is inconsistent
 *  around some cycle. */
std::vector<Rat> pl_vertex_values(const MetricGraph& g, const PLFunction& f);

/** div(f): sum of outgoing slopes at every vertex and breakpoint. */
Divisor div_of(const MetricGraph& g, const PLFunction& f);

/** Abel-Jacobi image of a divisor, reduced to [0,1)^b. */
Vec aj_divisor(const JacobianData& jd, const Divisor& d);

/** Linear equivalence via degree match plus equal Abel-Jacobi image. */
bool is_equivalent(const JacobianData& jd, const Divisor& a, const Divisor& b);

/** Deterministic helpers for randomized suites (raw engine output only, so
 *  sequences are identical across platforms). */
long rand_below(std::mt19937_64& rng, long n);
Rat rand_rat(std::mt19937_64& rng, long max_num, long max_den);

/** Random point: a vertex or a rational interior point of a random edge. */
GraphPoint random_point(const MetricGraph& g, std::mt19937_64& rng);

/** Random continuous PL function from random rational vertex potentials;
 *  each edge gets at most one breakpoint (two bracketing integer slopes). */
PLFunction random_pl_function(const MetricGraph& g, std::mt19937_64& rng);

/** Random effective divisor of the given degree supported on random points. */
Divisor random_effective_divisor(const MetricGraph& g, int degree, std::mt19937_64& rng);

} // namespace tropjac
