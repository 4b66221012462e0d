// Cellular chain complexes over Z, homology with torsion, relative homology
// of a flagged pair, and the induced map on H_k against the torus reference
// basis of coordinate period functionals.
#pragma once

#include <string>
#include <vector>

#include "tropjac/snf.hpp"
#include "tropjac/torus_complex.hpp"

namespace tropjac {

struct HomologyResult {
    int dim = 0;
    long free_rank = 0;
    std::vector<Int> torsion; // invariant factors >= 2, divisibility order
};

struct ChainComplexData {
    std::vector<long> n_cells;          // per dimension
    std::vector<SparseIntMat> boundary; // boundary[k]: C_k -> C_{k-1}; boundary[0] is 0 x n_0
};

/** Chain complex of the whole complex, or of the flagged subcomplex (which
 *  must be closed under faces). */
ChainComplexData chain_complex(const TorusCellComplex& c, const std::string& flag = "");

/** Quotient chain complex of the pair (complex, flagged subcomplex). */
ChainComplexData relative_chain_complex(const TorusCellComplex& c, const std::string& subflag);

/** Smith normal form homology; verifies the Euler characteristic identity. */
std::vector<HomologyResult> homology(const ChainComplexData& cc);

std::vector<long> betti(const std::vector<HomologyResult>& h);

/** Integral of dx_S over a cell, signed against the cell's basis orientation;
 *  |subset| must equal the cell dimension. */
Rat cell_period(const Polytope& p, const std::vector<int>& subset);

/** k-element subsets of {0..b-1} in lexicographic order; indexes the period
 *  functional basis of H_k(T^b). */
std::vector<std::vector<int>> coordinate_subsets(int b, int k);

struct InducedMapReport {
    int k = 0;
    long sub_free_rank = 0;
    std::vector<Int> sub_torsion;
    long total_rank = 0;      // C(b,k) = rank H_k(T^b)
    long map_rank = 0;        // rank of the induced map over Q
    bool surjective = false;  // over Z when z_certified, over Q otherwise
    bool injective = false;
    bool z_certified = false;
    std::vector<IVec> matrix; // total_rank x (#generating cycles): their periods
};

/** H_k(flagged subcomplex) -> H_k(T^b) in period coordinates. Dimension 1
 *  uses a fundamental-cycle presentation of the subcomplex 1-skeleton and is
 *  always certified over Z; higher k falls back to rank-only verdicts when
 *  the subcomplex is too large for a dense integer kernel. */
InducedMapReport induced_map(const TorusCellComplex& c, const std::string& flag, int k);

/** Rank over Q of the induced map (cheaper than the full report). */
long induced_map_rank(const TorusCellComplex& c, const std::string& flag, int k);

/** Long-exact-sequence bookkeeping over Q for sub -> total -> pair:
 *  b_i(pair) - b_i(tot) + f_i == b_{i-1}(sub) - f_{i-1} for every i. */
bool les_rank_check(const std::vector<long>& betti_sub, const std::vector<long>& betti_tot,
                    const std::vector<long>& betti_pair, const std::vector<long>& map_ranks);

} // namespace tropjac
