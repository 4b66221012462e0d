#include "tropjac/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "tropjac/parallel.hpp"
#include "tropjac/snf.hpp"

namespace tropjac {

namespace {

// Plane family n.x = c0 + k (k in Z): primitive normal, first nonzero > 0,
// c0 in [0,1). Translation invariant, so the family covers every lattice
// translate of each source plane.
struct PlaneClass {
    IVec normal;
    Rat offset0;

    bool operator<(const PlaneClass& o) const {
        if (normal != o.normal) return normal < o.normal;
        return offset0 < o.offset0;
    }
};

PlaneClass plane_class(const IVec& normal, const Rat& offset) {
    Vec n = ivec_to_vec(normal);
    bool zero = true;
    for (const auto& x : n)
        if (x != 0) zero = false;
    if (zero) throw InvalidInput("hyperplane with zero normal");
    IVec prim = primitive_integer(n);
    Rat alpha;
    for (size_t i = 0; i < n.size(); ++i)
        if (n[i] != 0) {
            alpha = n[i] / Rat(prim[i]);
            break;
        }
    return {std::move(prim), rat_frac(offset / alpha)};
}

Int dot_ii(const IVec& a, const IVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/** Pairwise Lagrange size reduction; enough at rank <= 3 with small entries. */
void gauss_reduce(std::vector<IVec>& g) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < g.size(); ++i)
            for (size_t j = 0; j < g.size(); ++j) {
                if (i == j) continue;
                Int nn = dot_ii(g[i], g[i]);
                if (nn == 0) continue;
                Int q0 = dot_ii(g[j], g[i]) / nn;
                IVec best = g[j];
                Int best_norm = dot_ii(best, best);
                for (Int q = q0 - 1; q <= q0 + 1; ++q) {
                    if (q == 0) continue;
                    IVec cand(g[j].size());
                    for (size_t k = 0; k < cand.size(); ++k) cand[k] = g[j][k] - q * g[i][k];
                    Int cn = dot_ii(cand, cand);
                    if (cn < best_norm) {
                        best = std::move(cand);
                        best_norm = cn;
                    }
                }
                if (best != g[j]) {
                    g[j] = std::move(best);
                    changed = true;
                }
            }
    }
    std::sort(g.begin(), g.end(), [](const IVec& a, const IVec& b) {
        Int na = dot_ii(a, a), nb = dot_ii(b, b);
        if (na != nb) return na < nb;
        return a < b;
    });
}

/** Short nonzero vectors of the lattice spanned by g, coefficient box {-1,0,1},
 *  made primitive, sign-normalized, sorted by entry mass then lex. */
std::vector<IVec> small_combos(const std::vector<IVec>& g) {
    size_t r = g.size(), b = g.empty() ? 0 : g[0].size();
    std::set<IVec> seen;
    long total = 1;
    for (size_t i = 0; i < r; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
        IVec c(b, Int(0));
        long rest = code;
        for (size_t i = 0; i < r; ++i) {
            long t = rest % 3 - 1;
            rest /= 3;
            if (t != 0)
                for (size_t k = 0; k < b; ++k) c[k] += Int(t) * g[i][k];
        }
        bool zero = true;
        Int gc = 0;
        for (const Int& x : c) {
            if (x != 0) zero = false;
            gc = boost::multiprecision::gcd(gc, x);
        }
        if (zero) continue;
        for (Int& x : c) x /= gc;
        for (const Int& x : c) {
            if (x == 0) continue;
            if (x < 0)
                for (Int& y : c) y = -y;
            break;
        }
        seen.insert(std::move(c));
    }
    std::vector<IVec> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const IVec& a, const IVec& b2) {
        Int ma = 0, mb = 0;
        for (const Int& x : a) ma += (x < 0 ? -x : x);
        for (const Int& x : b2) mb += (x < 0 ? -x : x);
        if (ma != mb) return ma < mb;
        return a < b2;
    });
    return out;
}

/** Planes pinning aff(p) plus one plane through each facet hull, all with
 *  short integer normals: any plane containing a facet and cutting the piece
 *  refines identically, and small normals keep the lattice instance count
 *  and the induced cell count down. Full-dimensional pieces keep their own
 *  facets, whose normals carry no freedom. */
std::vector<Hyperplane> arrangement_planes(const Polytope& p) {
    if (p.dim == p.ambient) return p.facets;
    int b = p.ambient;

    std::vector<IVec> dirs;
    for (const Vec& v : p.basis) dirs.push_back(primitive_integer(v));
    std::vector<Hyperplane> out;
    std::vector<IVec> aff = integer_kernel(dirs, b);
    gauss_reduce(aff);
    for (IVec& n : aff) {
        Rat off = vec_dot(ivec_to_vec(n), p.vertices[0]);
        out.push_back({std::move(n), std::move(off)});
    }
    if (p.dim == 0) return out;

    int nv = static_cast<int>(p.vertices.size());
    std::set<std::vector<int>> seen_sets;
    for (const Hyperplane& h : p.facets) {
        std::vector<int> s;
        for (int i = 0; i < nv; ++i)
            if (hyperplane_eval(h, p.vertices[i]) == 0) s.push_back(i);
        if (s.empty() || !seen_sets.insert(s).second) continue;

        std::vector<IVec> fdirs;
        for (size_t i = 1; i < s.size(); ++i) {
            Vec d = vec_sub(p.vertices[s[i]], p.vertices[s[0]]);
            if (!vec_is_zero(d)) fdirs.push_back(primitive_integer(d));
        }
        std::vector<IVec> ker = integer_kernel(fdirs, b);
        gauss_reduce(ker);

        Vec u;
        for (int i = 0; i < nv; ++i)
            if (std::find(s.begin(), s.end(), i) == s.end()) {
                u = vec_sub(p.vertices[i], p.vertices[s[0]]);
                break;
            }
        bool found = false;
        for (IVec& c : small_combos(ker)) {
            if (vec_dot(ivec_to_vec(c), u) == 0) continue;
            Rat off = vec_dot(ivec_to_vec(c), p.vertices[s[0]]);
            out.push_back({std::move(c), std::move(off)});
            found = true;
            break;
        }
        if (!found) out.push_back(h); // kernel basis always has a cutting vector
    }
    return out;
}

// A top-dimensional region during refinement. `planes` are instance ids with
// a side s meaning s * (n.x - c) <= 0 holds on the cell; every plane listed
// supports the cell and every facet of the cell lies on a listed plane.
// `tight[v]` holds positions into `planes` vanishing at vertex v. The float
// mirrors (fverts flat, flo/fhi per axis) serve the prefilter only; exact
// data stays authoritative.
struct ACell {
    std::vector<std::pair<int, int>> planes;
    std::vector<Vec> verts;
    std::vector<std::vector<int>> tight;
    std::vector<double> fverts;
    std::vector<double> flo, fhi;
};

void refresh_floats(ACell& c, int b) {
    size_t nv = c.verts.size();
    c.fverts.resize(nv * static_cast<size_t>(b));
    c.flo.assign(b, std::numeric_limits<double>::infinity());
    c.fhi.assign(b, -std::numeric_limits<double>::infinity());
    for (size_t i = 0; i < nv; ++i)
        for (int k = 0; k < b; ++k) {
            double x = rat_to_double(c.verts[i][k]);
            c.fverts[i * b + k] = x;
            c.flo[k] = std::min(c.flo[k], x);
            c.fhi[k] = std::max(c.fhi[k], x);
        }
}

// Double image of one plane instance, shared across the cell sweep. `margin`
// absorbs conversion and accumulation error; vertices stay in [0,1]^b so an
// absolute bound far above double rounding is safe.
struct PlaneF {
    std::vector<double> nd;
    double c_d = 0;
    double margin = 0;
};

PlaneF plane_floats(const Hyperplane& h) {
    PlaneF f;
    f.c_d = rat_to_double(h.offset);
    double scale = std::abs(f.c_d) + 1.0;
    f.nd.resize(h.normal.size());
    for (size_t i = 0; i < f.nd.size(); ++i) {
        f.nd[i] = h.normal[i].convert_to<double>();
        scale += std::abs(f.nd[i]);
    }
    f.margin = scale * 1e-9;
    return f;
}

void rebuild_tight_and_prune(ACell& c, const std::vector<Hyperplane>& instances) {
    size_t np = c.planes.size(), nv = c.verts.size();
    std::vector<std::vector<char>> zero(np, std::vector<char>(nv, 0));
    std::vector<char> touched(np, 0);
    for (size_t j = 0; j < np; ++j) {
        const Hyperplane& h = instances[c.planes[j].first];
        for (size_t i = 0; i < nv; ++i)
            if (hyperplane_eval(h, c.verts[i]) == 0) {
                zero[j][i] = 1;
                touched[j] = 1;
            }
    }
    std::vector<std::pair<int, int>> kept;
    std::vector<size_t> kept_src;
    for (size_t j = 0; j < np; ++j)
        if (touched[j]) {
            kept.push_back(c.planes[j]);
            kept_src.push_back(j);
        }
    c.planes = std::move(kept);
    c.tight.assign(nv, {});
    for (size_t jj = 0; jj < kept_src.size(); ++jj)
        for (size_t i = 0; i < nv; ++i)
            if (zero[kept_src[jj]][i]) c.tight[i].push_back(static_cast<int>(jj));
}

// [u,v] is an edge of the cell iff the planes tight at both vertices cut out
// a line: their normals all kill v - u, so rank b-1 is exact.
bool is_edge(const ACell& cell, int u, int v, const std::vector<Hyperplane>& instances, int b) {
    std::vector<int> common;
    std::set_intersection(cell.tight[u].begin(), cell.tight[u].end(), cell.tight[v].begin(),
                          cell.tight[v].end(), std::back_inserter(common));
    if (static_cast<int>(common.size()) < b - 1) return false;
    std::vector<Vec> normals;
    normals.reserve(common.size());
    for (int j : common) normals.push_back(ivec_to_vec(instances[cell.planes[j].first].normal));
    return rank(Mat::from_rows(normals)) == b - 1;
}

struct SplitOutcome {
    int kind = 0; // 0 untouched, 1 plane added tangentially, 2 split in two
    int side = 0;
    std::vector<char> is_tight;
    ACell lo, hi;
};

ACell make_child(const ACell& cell, int h_id, int side, const std::vector<Rat>& ev,
                 bool keep_nonpos, const std::vector<Vec>& new_pts,
                 const std::vector<Hyperplane>& instances, int b) {
    ACell c;
    for (size_t i = 0; i < cell.verts.size(); ++i) {
        bool keep = keep_nonpos ? ev[i] <= 0 : ev[i] >= 0;
        if (keep) c.verts.push_back(cell.verts[i]);
    }
    c.verts.insert(c.verts.end(), new_pts.begin(), new_pts.end());
    c.planes = cell.planes;
    c.planes.emplace_back(h_id, side);
    rebuild_tight_and_prune(c, instances);
    refresh_floats(c, b);
    return c;
}

SplitOutcome classify_and_split(const ACell& cell, int h_id, const PlaneF& pf,
                                const std::vector<Hyperplane>& instances, int b) {
    SplitOutcome out;

    // Interval of n.x - c over the bounding box; a clear side skips the cell.
    double s_lo = -pf.c_d, s_hi = -pf.c_d;
    for (int k = 0; k < b; ++k) {
        double n = pf.nd[k];
        s_lo += n * (n >= 0 ? cell.flo[k] : cell.fhi[k]);
        s_hi += n * (n >= 0 ? cell.fhi[k] : cell.flo[k]);
    }
    if (s_lo > pf.margin || s_hi < -pf.margin) return out;

    for (const auto& [pid, side] : cell.planes)
        if (pid == h_id) return out;

    bool any_lo = false, any_hi = false, uncertain = false;
    size_t nv = cell.verts.size();
    for (size_t vi = 0; vi < nv; ++vi) {
        double s = -pf.c_d;
        for (int k = 0; k < b; ++k) s += pf.nd[k] * cell.fverts[vi * b + k];
        if (s < -pf.margin)
            any_lo = true;
        else if (s > pf.margin)
            any_hi = true;
        else
            uncertain = true;
    }
    if (!uncertain && (!any_lo || !any_hi)) return out;

    const Hyperplane& h = instances[h_id];

    std::vector<Rat> ev(cell.verts.size());
    int n_neg = 0, n_pos = 0, n_zero = 0;
    for (size_t i = 0; i < cell.verts.size(); ++i) {
        ev[i] = hyperplane_eval(h, cell.verts[i]);
        if (ev[i] < 0)
            ++n_neg;
        else if (ev[i] > 0)
            ++n_pos;
        else
            ++n_zero;
    }
    if (n_neg == 0 && n_pos == 0)
        throw VerificationError("full-dimensional cell contained in a hyperplane");
    if (n_neg == 0 || n_pos == 0) {
        if (n_zero == 0) return out;
        out.kind = 1;
        out.side = n_pos == 0 ? +1 : -1;
        out.is_tight.resize(cell.verts.size());
        for (size_t i = 0; i < cell.verts.size(); ++i) out.is_tight[i] = ev[i] == 0 ? 1 : 0;
        return out;
    }

    out.kind = 2;
    std::vector<Vec> new_pts;
    int n = static_cast<int>(cell.verts.size());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool crossing = (ev[u] < 0 && ev[v] > 0) || (ev[u] > 0 && ev[v] < 0);
            if (!crossing || !is_edge(cell, u, v, instances, b)) continue;
            Rat t = ev[u] / (ev[u] - ev[v]);
            Vec w(cell.verts[u].size());
            for (size_t i = 0; i < w.size(); ++i)
                w[i] = cell.verts[u][i] + t * (cell.verts[v][i] - cell.verts[u][i]);
            new_pts.push_back(std::move(w));
        }
    out.lo = make_child(cell, h_id, +1, ev, true, new_pts, instances, b);
    out.hi = make_child(cell, h_id, -1, ev, false, new_pts, instances, b);
    return out;
}

Polytope cell_to_polytope(const ACell& c, int b, const std::vector<Hyperplane>& instances) {
    Polytope p;
    p.ambient = b;
    p.vertices = c.verts;
    std::sort(p.vertices.begin(), p.vertices.end(), VecLess{});
    std::vector<Vec> diffs;
    for (size_t i = 1; i < p.vertices.size(); ++i)
        diffs.push_back(vec_sub(p.vertices[i], p.vertices[0]));
    for (int idx : greedy_independent(diffs)) p.basis.push_back(diffs[idx]);
    p.dim = static_cast<int>(p.basis.size());
    if (p.dim != b) throw VerificationError("arrangement produced a degenerate cell");

    std::vector<std::vector<Vec>> tight_pts(c.planes.size());
    for (size_t i = 0; i < c.verts.size(); ++i)
        for (int j : c.tight[i]) tight_pts[j].push_back(c.verts[i]);
    for (size_t j = 0; j < c.planes.size(); ++j) {
        if (affine_rank(tight_pts[j]) != b - 1) continue;
        Hyperplane h = instances[c.planes[j].first];
        if (c.planes[j].second < 0) {
            for (auto& x : h.normal) x = -x;
            h.offset = -h.offset;
        }
        p.facets.push_back(std::move(h));
    }
    std::sort(p.facets.begin(), p.facets.end());
    return p;
}

TorusCellComplex refine_core(const std::vector<ArrangementInput>& inputs, int b,
                             const Guards& guards, const std::vector<Hyperplane>& extra_planes,
                             bool use_parallel) {
    if (b < 1) throw InvalidInput("arrangement requires ambient dimension >= 1");
    if (b > guards.max_b_arrangement)
        throw GuardExceeded("arrangement dimension " + std::to_string(b) + " exceeds guard " +
                            std::to_string(guards.max_b_arrangement));

    std::set<PlaneClass> classes;
    for (int i = 0; i < b; ++i) {
        IVec e(b, Int(0));
        e[i] = 1;
        classes.insert({e, Rat(0)});
        classes.insert({e, Rat(1) / 2});
    }
    for (const auto& in : inputs)
        for (const auto& p : in.polys) {
            if (p.empty()) throw InvalidInput("empty polytope in arrangement input");
            if (p.ambient != b) throw InvalidInput("arrangement input in wrong ambient dimension");
            for (const auto& h : arrangement_planes(p)) classes.insert(plane_class(h.normal, h.offset));
        }
    for (const auto& h : extra_planes) classes.insert(plane_class(h.normal, h.offset));

    // One instance per lattice translate meeting [0,1]^b.
    std::vector<Hyperplane> instances;
    std::map<Hyperplane, int> inst_index;
    for (const auto& cls : classes) {
        Rat lo(0), hi(0);
        for (const Int& ni : cls.normal)
            (ni < 0 ? lo : hi) += Rat(ni);
        for (Int k = rat_ceil(lo - cls.offset0); k <= rat_floor(hi - cls.offset0); ++k) {
            Hyperplane inst{cls.normal, cls.offset0 + Rat(k)};
            inst_index.emplace(inst, static_cast<int>(instances.size()));
            instances.push_back(std::move(inst));
        }
    }

    // Seed with the closed cube; its wall planes must be listed up front so
    // the edge test sees every facet from the first split on.
    ACell cube;
    for (int mask = 0; mask < (1 << b); ++mask) {
        Vec v(b);
        for (int i = 0; i < b; ++i) v[i] = (mask >> i) & 1;
        cube.verts.push_back(std::move(v));
    }
    for (int i = 0; i < b; ++i) {
        IVec e(b, Int(0));
        e[i] = 1;
        cube.planes.emplace_back(inst_index.at(Hyperplane{e, Rat(0)}), -1);
        cube.planes.emplace_back(inst_index.at(Hyperplane{e, Rat(1)}), +1);
    }
    rebuild_tight_and_prune(cube, instances);
    refresh_floats(cube, b);

    std::vector<ACell> cells;
    cells.push_back(std::move(cube));
    std::vector<SplitOutcome> out;
    for (int h = 0; h < static_cast<int>(instances.size()); ++h) {
        PlaneF pf = plane_floats(instances[h]);
        size_t pre = cells.size();
        out.assign(pre, {});
        auto work = [&](long i) { out[i] = classify_and_split(cells[i], h, pf, instances, b); };
        if (use_parallel)
            parallel_for(static_cast<long>(pre), work);
        else
            for (long i = 0; i < static_cast<long>(pre); ++i) work(i);
        // Children of cell i replace it in place, high side appended; the
        // apply order is serial so parallel and serial sweeps agree.
        for (size_t i = 0; i < pre; ++i) {
            SplitOutcome& o = out[i];
            if (o.kind == 1) {
                ACell& c = cells[i];
                c.planes.emplace_back(h, o.side);
                for (size_t vtx = 0; vtx < c.verts.size(); ++vtx)
                    if (o.is_tight[vtx]) c.tight[vtx].push_back(static_cast<int>(c.planes.size()) - 1);
            } else if (o.kind == 2) {
                cells[i] = std::move(o.lo);
                cells.push_back(std::move(o.hi));
            }
        }
    }

    std::vector<std::pair<Polytope, std::string>> generators;
    generators.reserve(cells.size());
    for (const auto& c : cells) generators.emplace_back(cell_to_polytope(c, b, instances), std::string{});
    TorusCellComplex complex = build_torus_complex(b, generators);
    for (const auto& in : inputs) flag_cells(complex, in.polys, in.label);
    return complex;
}

} // namespace

std::vector<Hyperplane> supporting_planes(const Polytope& p) {
    if (p.empty()) throw InvalidInput("supporting planes of an empty polytope");
    std::vector<Hyperplane> out = p.aff_eqs;
    out.insert(out.end(), p.facets.begin(), p.facets.end());
    return out;
}

TorusCellComplex refine(const std::vector<ArrangementInput>& inputs, int b, const Guards& guards,
                        const std::vector<Hyperplane>& extra_planes) {
    return refine_core(inputs, b, guards, extra_planes, true);
}

TorusCellComplex refine_serial(const std::vector<ArrangementInput>& inputs, int b,
                               const Guards& guards, const std::vector<Hyperplane>& extra_planes) {
    return refine_core(inputs, b, guards, extra_planes, false);
}

} // namespace tropjac
