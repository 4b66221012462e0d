#include "tropjac/lefschetz.hpp"

#include <string>
#include <utility>

#include "tropjac/arrangement.hpp"
#include "tropjac/symd.hpp"

namespace tropjac {

namespace {

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

bool trivial(const HomologyResult& h) { return h.free_rank == 0 && h.torsion.empty(); }

ConnectivityReport lefschetz_core(const JacobianData& jd, int d, const Guards& guards,
                                  TorusCellComplex* out_complex, bool use_parallel) {
    if (d < 1) throw InvalidInput("connectivity check needs d >= 1");
    ConnectivityReport rep;
    rep.b = jd.b;
    rep.d = d;

    std::vector<WdCell> wd =
        use_parallel ? wd_cells(jd, d, guards) : wd_cells_serial(jd, d, guards);
    ArrangementInput input;
    input.label = "wd";
    input.polys.reserve(wd.size());
    for (const auto& c : wd) input.polys.push_back(c.poly);

    TorusCellComplex complex = use_parallel ? refine({input}, jd.b, guards)
                                            : refine_serial({input}, jd.b, guards);
    rep.cells_total = complex.cell_count();
    rep.cells_flagged = complex.flagged_count("wd");

    rep.total = homology(chain_complex(complex));
    rep.sub = homology(chain_complex(complex, "wd"));
    rep.pair = homology(relative_chain_complex(complex, "wd"));

    rep.vanishing = true;
    for (int i = 0; i <= d; ++i) {
        bool zero = i >= static_cast<int>(rep.pair.size()) || trivial(rep.pair[i]);
        rep.vanishing = rep.vanishing && zero;
    }

    rep.h1 = induced_map(complex, "wd", 1);
    rep.h1_required_ok = d >= 2 ? rep.h1.surjective && rep.h1.injective : rep.h1.surjective;

    rep.sub_torus_match = true;
    for (int i = 0; i <= d; ++i) {
        bool match = i < static_cast<int>(rep.sub.size()) &&
                     rep.sub[i].free_rank == binom(jd.b, i) && rep.sub[i].torsion.empty();
        rep.sub_torus_match = rep.sub_torus_match && match;
    }

    rep.map_ranks.assign(complex.top_dim() + 1, 0);
    for (int k = 0; k <= complex.top_dim(); ++k)
        rep.map_ranks[k] = induced_map_rank(complex, "wd", k);
    rep.les_ok = les_rank_check(betti(rep.sub), betti(rep.total), betti(rep.pair), rep.map_ranks);
    if (!rep.les_ok) throw VerificationError("long exact sequence rank bookkeeping failed");

    rep.pass = rep.vanishing && rep.h1_required_ok;
    if (out_complex) *out_complex = std::move(complex);
    return rep;
}

} // namespace

ConnectivityReport lefschetz_check(const JacobianData& jd, int d, const Guards& guards,
                                   TorusCellComplex* out_complex) {
    return lefschetz_core(jd, d, guards, out_complex, true);
}

ConnectivityReport lefschetz_check_serial(const JacobianData& jd, int d, const Guards& guards,
                                          TorusCellComplex* out_complex) {
    return lefschetz_core(jd, d, guards, out_complex, false);
}

} // namespace tropjac
