// End-to-end connectivity check for the pair (J, W_d): build W_d, refine it
// into a CW structure on the torus, and certify the vanishing of relative
// homology through degree d together with the H_1 comparison.
#pragma once

#include <vector>

#include "tropjac/error.hpp"
#include "tropjac/graph.hpp"
#include "tropjac/homology.hpp"

namespace tropjac {

struct ConnectivityReport {
    int b = 0;
    int d = 0;
    long cells_total = 0;
    long cells_flagged = 0;
    std::vector<HomologyResult> total; // H_*(torus)
    std::vector<HomologyResult> sub;   // H_*(W_d)
    std::vector<HomologyResult> pair;  // H_*(torus, W_d)
    InducedMapReport h1;               // H_1(W_d) -> H_1(torus)
    std::vector<long> map_ranks;       // induced rank per degree, for the LES check
    bool vanishing = false;            // H_i(pair) = 0 for all i <= d
    bool h1_required_ok = false;       // iso for d >= 2, surjective for d = 1
    bool sub_torus_match = false;      // H_i(W_d) free of rank C(b,i) for i <= d
    bool les_ok = false;
    bool pass = false;                 // vanishing and the H_1 requirement
};

/** Runs the full pipeline; throws on guard violations and when internal
 *  consistency checks (boundary^2, LES ranks, Euler counts) fail.
 *  `out_complex`, when given, receives the refined flagged complex. */
ConnectivityReport lefschetz_check(const JacobianData& jd, int d, const Guards& guards = {},
                                   TorusCellComplex* out_complex = nullptr);

/** Serial reference implementation (identical output). */
ConnectivityReport lefschetz_check_serial(const JacobianData& jd, int d,
                                          const Guards& guards = {},
                                          TorusCellComplex* out_complex = nullptr);

} // namespace tropjac
