#include "tropjac/containment.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace tropjac {

namespace {

void bounding_box(const Polytope& p, Vec& mn, Vec& mx) {
    mn = p.vertices.front();
    mx = p.vertices.front();
    for (const auto& v : p.vertices)
        for (size_t c = 0; c < v.size(); ++c) {
            mn[c] = std::min(mn[c], v[c]);
            mx[c] = std::max(mx[c], v[c]);
        }
}

// Lattice translates of q whose affine hull contains aff(p) and whose
// bounding box meets p's.
void append_candidates(const Polytope& q, const Polytope& p, const Vec& pmin, const Vec& pmax,
                       std::vector<Polytope>& out) {
    int n = p.ambient;
    for (const auto& eq : q.aff_eqs) {
        Vec nq = ivec_to_vec(eq.normal);
        for (const auto& dir : p.basis)
            if (vec_dot(nq, dir) != 0) return; // aff(q)+lambda can never contain aff(p)
    }
    Vec qmin, qmax;
    bounding_box(q, qmin, qmax);
    std::vector<Int> lo(n), hi(n);
    for (int c = 0; c < n; ++c) {
        lo[c] = rat_ceil(pmin[c] - qmax[c]);
        hi[c] = rat_floor(pmax[c] - qmin[c]);
        if (lo[c] > hi[c]) return;
    }
    std::vector<Int> lam = lo;
    while (true) {
        bool aff_ok = true;
        for (const auto& eq : q.aff_eqs) {
            Rat s = -eq.offset;
            for (int c = 0; c < n; ++c) s += Rat(eq.normal[c]) * (p.base()[c] - Rat(lam[c]));
            if (s != 0) {
                aff_ok = false;
                break;
            }
        }
        if (aff_ok) {
            Vec shift(n);
            for (int c = 0; c < n; ++c) shift[c] = Rat(lam[c]);
            out.push_back(translate(q, shift));
        }
        int c = 0;
        while (c < n && lam[c] == hi[c]) {
            lam[c] = lo[c];
            ++c;
        }
        if (c == n) return;
        ++lam[c];
    }
}

} // namespace

bool union_contains(const std::vector<Polytope>& cover, const Polytope& p) {
    if (p.empty()) return true;
    Vec pmin, pmax;
    bounding_box(p, pmin, pmax);
    std::vector<Polytope> cands;
    for (const auto& q : cover) {
        if (q.empty()) continue;
        if (q.ambient != p.ambient) throw InvalidInput("union containment across ambient dimensions");
        if (q.dim < p.dim) continue;
        append_candidates(q, p, pmin, pmax, cands);
    }
    if (cands.empty()) return false;

    std::set<Hyperplane> planes;
    for (const auto& c : cands) planes.insert(c.facets.begin(), c.facets.end());
    std::vector<Polytope> pieces{p};
    for (const auto& h : planes) {
        std::vector<Polytope> next;
        for (const auto& piece : pieces) {
            auto [lo_half, hi_half] = split_polytope(piece, h);
            if (!lo_half.empty()) next.push_back(std::move(lo_half));
            if (!hi_half.empty()) next.push_back(std::move(hi_half));
        }
        pieces = std::move(next);
    }
    for (const auto& piece : pieces) {
        Vec c = piece.centroid();
        bool covered = false;
        for (const auto& cand : cands)
            if (polytope_contains(cand, c)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

namespace {

std::vector<const Polytope*> all_cells(const TorusCellComplex& x) {
    std::vector<const Polytope*> out;
    for (const auto& level : x.cells)
        for (const auto& c : level) out.push_back(&c.poly);
    return out;
}

bool union_covers_all(const std::vector<Polytope>& cover, const std::vector<const Polytope*>& parts,
                      const Vec& shift) {
    for (const Polytope* p : parts)
        if (!union_contains(cover, translate(*p, shift))) return false;
    return true;
}

} // namespace

std::optional<Vec> translate_match(const TorusCellComplex& a, const TorusCellComplex& b) {
    if (a.b != b.b) throw InvalidInput("translate match across different tori");
    if (a.cells.empty() || b.cells.empty() || a.cells[0].empty() || b.cells[0].empty())
        return a.cell_count() == 0 && b.cell_count() == 0 ? std::optional<Vec>(Vec{}) : std::nullopt;

    std::set<Vec, VecLess> candidates;
    for (const auto& av : a.cells[0])
        for (const auto& bv : b.cells[0])
            candidates.insert(torus_reduce(vec_sub(bv.poly.base(), av.poly.base())));

    std::vector<Polytope> a_polys, b_polys;
    for (const Polytope* p : all_cells(a)) a_polys.push_back(*p);
    for (const Polytope* p : all_cells(b)) b_polys.push_back(*p);
    std::vector<const Polytope*> a_parts = all_cells(a), b_parts = all_cells(b);

    Vec zero(a.b, Rat(0));
    for (const Vec& v : candidates) {
        // cheap filter: a 0-cell of a must land inside |b|
        bool hit = false;
        Vec probe = vec_add(a.cells[0][0].poly.base(), v);
        for (const auto& q : b_polys)
            if (contains_mod_lattice(q, probe)) {
                hit = true;
                break;
            }
        if (!hit) continue;

        std::vector<Polytope> a_shifted;
        a_shifted.reserve(a_polys.size());
        for (const auto& q : a_polys) a_shifted.push_back(translate(q, v));
        if (union_covers_all(b_polys, a_parts, v) && union_covers_all(a_shifted, b_parts, zero))
            return v;
    }
    return std::nullopt;
}

bool is_effective_class(const JacobianData& jd, const Vec& y, int d,
                        const std::vector<WdCell>& wd) {
    if (d < 0) throw InvalidInput("negative degree in effectivity test");
    if (static_cast<int>(y.size()) != jd.b) throw InvalidInput("class vector has wrong dimension");
    if (d >= jd.b) return true; // W_d fills the whole torus from degree b on
    for (const auto& cell : wd)
        if (contains_mod_lattice(cell.poly, y)) return true;
    return false;
}

bool is_effective_class(const JacobianData& jd, const Vec& y, int d, const Guards& guards) {
    if (d < 0) throw InvalidInput("negative degree in effectivity test");
    if (d >= jd.b) {
        if (static_cast<int>(y.size()) != jd.b) throw InvalidInput("class vector has wrong dimension");
        return true;
    }
    return is_effective_class(jd, y, d, wd_cells(jd, d, guards));
}

int divisor_rank(const JacobianData& jd, const Divisor& div, const Guards& guards) {
    Int deg = div.degree();
    if (deg < 0) return -1;
    int d = deg.convert_to<int>();
    Vec y = aj_divisor(jd, div);

    std::map<int, std::vector<WdCell>> wd_cache;
    auto wd = [&](int k) -> const std::vector<WdCell>& {
        auto it = wd_cache.find(k);
        if (it == wd_cache.end()) it = wd_cache.emplace(k, wd_cells(jd, k, guards)).first;
        return it->second;
    };

    // rank >= r iff mu(D) - W_r lies in W_{d-r}; monotone in r, so scan up.
    int r = 0;
    for (; r <= d; ++r) {
        if (d - r >= jd.b) continue;
        bool ok = true;
        std::vector<Polytope> cover;
        for (const auto& cell : wd(d - r)) cover.push_back(cell.poly);
        for (const auto& q : wd(r)) {
            std::vector<Vec> pts;
            pts.reserve(q.poly.vertices.size());
            for (const auto& v : q.poly.vertices) pts.push_back(vec_sub(y, v));
            Polytope reflected = polytope_from_points(jd.b, std::move(pts));
            if (!union_contains(cover, reflected)) {
                ok = false;
                break;
            }
        }
        if (!ok) break;
    }
    return r - 1;
}

} // namespace tropjac
