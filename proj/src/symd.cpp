#include "tropjac/symd.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "tropjac/parallel.hpp"
#include "tropjac/torus_complex.hpp"

namespace tropjac {

int SymCell::degree() const {
    int d = 0;
    for (const auto& [e, k] : mult) d += k;
    return d;
}

std::vector<SymCell> sym_cells(const MetricGraph& g, int d, const Guards& guards) {
    if (d < 0) throw InvalidInput("negative symmetric power");
    if (d > guards.max_d)
        throw GuardExceeded("degree " + std::to_string(d) + " exceeds guard " +
                            std::to_string(guards.max_d));
    std::vector<SymCell> out;
    if (d == 0) {
        out.emplace_back();
        return out;
    }
    int m = static_cast<int>(g.edges.size());
    if (m == 0) return out;

    std::vector<int> pick(d, 0); // non-decreasing edge indices
    while (true) {
        SymCell c;
        for (int i = 0; i < d; ++i) {
            if (!c.mult.empty() && c.mult.back().first == pick[i])
                ++c.mult.back().second;
            else
                c.mult.emplace_back(pick[i], 1);
        }
        out.push_back(std::move(c));
        int i = d - 1;
        while (i >= 0 && pick[i] == m - 1) --i;
        if (i < 0) break;
        int v = pick[i] + 1;
        for (int j = i; j < d; ++j) pick[j] = v;
    }
    return out;
}

AffineCellMap aj_on_cell(const JacobianData& jd, const SymCell& cell) {
    AffineCellMap m;
    m.base.assign(jd.b, Rat(0));
    for (const auto& [e, k] : cell.mult) {
        if (e < 0 || e >= static_cast<int>(jd.graph.edges.size()))
            throw InvalidInput("edge index out of range in sym cell");
        if (k <= 0) throw InvalidInput("nonpositive multiplicity in sym cell");
        const Edge& ed = jd.graph.edges[e];
        m.base = vec_add(m.base, vec_scale(jd.mu_vertex[ed.tail], Rat(k)));
        m.gens.emplace_back(jd.velocity[e], Rat(k) * ed.length);
    }
    return m;
}

namespace {

// a subset of some lattice translate of b; candidate shifts come from the
// bounding boxes, membership from the vertices (both polytopes are convex).
bool contained_in_mod(const Polytope& a, const Polytope& b) {
    if (a.dim > b.dim) return false;
    int n = a.ambient;
    std::vector<Int> lo(n), hi(n);
    for (int c = 0; c < n; ++c) {
        Rat amin = a.vertices.front()[c], amax = amin;
        for (const auto& v : a.vertices) {
            amin = std::min(amin, v[c]);
            amax = std::max(amax, v[c]);
        }
        Rat bmin = b.vertices.front()[c], bmax = bmin;
        for (const auto& v : b.vertices) {
            bmin = std::min(bmin, v[c]);
            bmax = std::max(bmax, v[c]);
        }
        lo[c] = rat_ceil(amax - bmax);
        hi[c] = rat_floor(amin - bmin);
        if (lo[c] > hi[c]) return false;
    }
    std::vector<Int> lam = lo;
    while (true) {
        Vec shift(n);
        for (int c = 0; c < n; ++c) shift[c] = Rat(lam[c]);
        bool ok = true;
        for (const auto& v : a.vertices)
            if (!polytope_contains(b, vec_sub(v, shift))) {
                ok = false;
                break;
            }
        if (ok) return true;
        int c = 0;
        while (c < n && lam[c] == hi[c]) {
            lam[c] = lo[c];
            ++c;
        }
        if (c == n) return false;
        ++lam[c];
    }
}

std::vector<WdCell> wd_core(const JacobianData& jd, int d, const Guards& guards,
                            bool use_parallel) {
    std::vector<SymCell> cells = sym_cells(jd.graph, d, guards);
    int b = jd.b;
    std::vector<WdCell> built(cells.size());
    auto build = [&](long i) {
        WdCell w;
        w.source = cells[i];
        w.map = aj_on_cell(jd, cells[i]);
        int k = static_cast<int>(w.map.gens.size());
        std::vector<Vec> pts;
        pts.reserve(1u << k);
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            Vec p = w.map.base;
            for (int g = 0; g < k; ++g) {
                if (!(mask >> g & 1)) continue;
                for (int c = 0; c < b; ++c) p[c] += w.map.gens[g].first[c] * w.map.gens[g].second;
            }
            pts.push_back(std::move(p));
        }
        w.poly = canonical_torus_rep(polytope_from_points(b, std::move(pts)));
        built[i] = std::move(w);
    };
    if (use_parallel)
        parallel_for(static_cast<long>(built.size()), build);
    else
        for (long i = 0; i < static_cast<long>(built.size()); ++i) build(i);

    std::vector<WdCell> unique;
    std::set<std::string> seen;
    for (auto& w : built)
        if (seen.insert(polytope_key(w.poly)).second) unique.push_back(std::move(w));

    // Distinct canonical representatives can never contain each other both
    // ways, so dropping the covered ones is order independent.
    std::vector<char> keep(unique.size(), 1);
    auto prune = [&](long i) {
        for (size_t j = 0; j < unique.size(); ++j)
            if (j != static_cast<size_t>(i) && contained_in_mod(unique[i].poly, unique[j].poly)) {
                keep[i] = 0;
                break;
            }
    };
    if (use_parallel)
        parallel_for(static_cast<long>(unique.size()), prune);
    else
        for (long i = 0; i < static_cast<long>(unique.size()); ++i) prune(i);

    std::vector<WdCell> out;
    for (size_t i = 0; i < unique.size(); ++i)
        if (keep[i]) out.push_back(std::move(unique[i]));
    return out;
}

} // namespace

std::vector<WdCell> wd_cells(const JacobianData& jd, int d, const Guards& guards) {
    return wd_core(jd, d, guards, true);
}

std::vector<WdCell> wd_cells_serial(const JacobianData& jd, int d, const Guards& guards) {
    return wd_core(jd, d, guards, false);
}

} // namespace tropjac
