// Independent divisor-rank oracle through discrete chip firing: scale the
// metric to integer edge lengths, pass to the unit subdivision, and run
// Dhar-style q-reduction there. Effective test divisors only need to range
// over the model vertices, which keeps the enumeration small.
#pragma once

#include <vector>

#include "tropjac/divisor.hpp"
#include "tropjac/error.hpp"
#include "tropjac/graph.hpp"

namespace tropjac {

/** Multigraph with unit edge lengths; node 0..model-1 are the original
 *  vertices, the rest subdivide edges. */
struct UnitGraph {
    int n = 0;
    int q = 0; // reduction basepoint
    std::vector<std::vector<std::pair<int, int>>> adj; // (neighbor, edge multiplicity)
    std::vector<int> dist;                             // BFS hops from q
    std::vector<std::vector<int>> layers;              // vertices by dist
    int model = 0;                                     // number of original vertices
};

/** Unit subdivision at the common denominator of edge lengths and divisor
 *  offsets; fills `chips` with the divisor pushed onto subdivision nodes.
 *  Throws GuardExceeded when the subdivision outgrows the oracle guard. */
UnitGraph unit_subdivision(const MetricGraph& g, const Divisor& div, const Guards& guards,
                           std::vector<long long>& chips);

/** In-place q-reduction: clears debt off q layer by layer, then superstabilizes
 *  with iterated Dhar burning. The result is the unique q-reduced representative. */
void q_reduce(const UnitGraph& ug, std::vector<long long>& chips);

/** Baker-Norine rank of the divisor class, computed on the unit subdivision. */
int rank_oracle(const MetricGraph& g, const Divisor& div, const Guards& guards = {});

/** Serial reference implementation of rank_oracle (identical output). */
int rank_oracle_serial(const MetricGraph& g, const Divisor& div, const Guards& guards = {});

} // namespace tropjac
