#include "tropjac/torus_complex.hpp"

#include <algorithm>
#include <set>

#include "tropjac/error.hpp"

namespace tropjac {

bool TorusCell::has_label(const std::string& l) const {
    return std::binary_search(labels.begin(), labels.end(), l);
}

long TorusCellComplex::cell_count() const {
    long n = 0;
    for (const auto& level : cells) n += static_cast<long>(level.size());
    return n;
}

long TorusCellComplex::cell_count(int dim) const {
    if (dim < 0 || dim >= static_cast<int>(cells.size())) return 0;
    return static_cast<long>(cells[dim].size());
}

long TorusCellComplex::flagged_count(const std::string& label) const {
    long n = 0;
    for (const auto& level : cells)
        for (const TorusCell& c : level)
            if (c.has_label(label)) ++n;
    return n;
}

Polytope make_face(const Polytope& parent, const std::vector<int>& vertex_idx) {
    Polytope f;
    f.ambient = parent.ambient;
    for (int i : vertex_idx) f.vertices.push_back(parent.vertices[i]);
    std::vector<Vec> diffs;
    for (size_t i = 1; i < f.vertices.size(); ++i)
        diffs.push_back(vec_sub(f.vertices[i], f.vertices[0]));
    for (int i : greedy_independent(diffs)) f.basis.push_back(diffs[i]);
    f.dim = static_cast<int>(f.basis.size());
    f.aff_eqs = parent.aff_eqs;
    for (const Hyperplane& h : parent.facets) {
        bool tight = true;
        for (const Vec& v : f.vertices)
            if (hyperplane_eval(h, v) != 0) { tight = false; break; }
        if (tight)
            f.aff_eqs.push_back(h);
        else
            f.facets.push_back(h);
    }
    return f;
}

Polytope canonical_torus_rep(const Polytope& p, IVec* shift) {
    const Vec& m = p.base(); // lex-min vertex; lex order is translation invariant
    IVec s(p.ambient);
    Vec t(p.ambient);
    for (int i = 0; i < p.ambient; ++i) {
        s[i] = -rat_floor(m[i]);
        t[i] = Rat(s[i]);
    }
    if (shift) *shift = s;
    return translate(p, t);
}

bool contains_mod_lattice(const Polytope& q, const Vec& x) {
    if (q.empty()) return false;
    int n = q.ambient;
    // bounding box of q per coordinate
    std::vector<Rat> lo(n), hi(n);
    for (int i = 0; i < n; ++i) lo[i] = hi[i] = q.vertices[0][i];
    for (const Vec& v : q.vertices)
        for (int i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    std::vector<std::vector<Int>> choices(n);
    for (int i = 0; i < n; ++i) {
        Int a = rat_floor(lo[i] - x[i]);
        Int b = rat_floor(hi[i] - x[i]);
        if (lo[i] - x[i] > Rat(a)) ++a; // ceil
        for (Int k = a; k <= b; ++k) choices[i].push_back(k);
        if (choices[i].empty()) return false;
    }
    Vec y(x);
    std::vector<size_t> pick(n, 0);
    while (true) {
        for (int i = 0; i < n; ++i) y[i] = x[i] + Rat(choices[i][pick[i]]);
        if (polytope_contains(q, y)) return true;
        int i = n - 1;
        while (i >= 0 && pick[i] + 1 == choices[i].size()) { pick[i] = 0; --i; }
        if (i < 0) return false;
        ++pick[i];
    }
}

namespace {

/** Incidence number of the geometric facet g inside cell f: sign of the
 *  determinant of [outward displacement; basis of g] written in f's basis. */
int incidence_sign(const Polytope& f, const Polytope& g) {
    int k = f.dim;
    Vec u = vec_sub(g.centroid(), f.centroid());
    Mat m(k, k);
    Vec c = coords_in_rows(f.basis, u);
    for (int j = 0; j < k; ++j) m.at(0, j) = c[j];
    for (int i = 0; i < k - 1; ++i) {
        Vec ci = coords_in_rows(f.basis, g.basis[i]);
        for (int j = 0; j < k; ++j) m.at(i + 1, j) = ci[j];
    }
    Rat d = det(m);
    if (d == 0) throw VerificationError("degenerate incidence orientation");
    return d > 0 ? 1 : -1;
}

struct PendingCell {
    Polytope poly;
    std::set<std::string> labels;
};

/** Facets of p as tight vertex-index sets of its listed facet planes. For a
 *  face of codimension > 0 a plane can touch in lower dimension or several
 *  planes can carve the same facet, so candidates are rank-filtered and
 *  deduplicated. */
std::vector<std::vector<int>> facet_sets_of(const Polytope& p) {
    int n = static_cast<int>(p.vertices.size());
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    for (const Hyperplane& h : p.facets) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (hyperplane_eval(h, p.vertices[i]) == 0) s.push_back(i);
        if (static_cast<int>(s.size()) < p.dim) continue;
        if (!seen.insert(s).second) continue;
        std::vector<Vec> pts;
        pts.reserve(s.size());
        for (int i : s) pts.push_back(p.vertices[i]);
        if (affine_rank(pts) == p.dim - 1) out.push_back(std::move(s));
    }
    return out;
}

} // namespace

TorusCellComplex build_torus_complex(
    int b, const std::vector<std::pair<Polytope, std::string>>& generators) {
    int top = 0;
    for (const auto& [p, label] : generators) top = std::max(top, p.dim);

    // Generators seed their own level; faces are discovered top-down, one
    // facet sweep per distinct cell, with labels inherited along the way.
    std::vector<std::map<std::string, PendingCell>> pending(top + 1);
    for (const auto& [p, label] : generators) {
        if (p.empty()) throw InvalidInput("empty generator polytope");
        if (p.ambient != b) throw InvalidInput("generator ambient dimension mismatch");
        Polytope rep = canonical_torus_rep(p);
        std::string key = polytope_key(rep);
        auto [it, fresh] = pending[p.dim].try_emplace(std::move(key));
        if (fresh) it->second.poly = std::move(rep);
        if (!label.empty()) it->second.labels.insert(label);
    }

    TorusCellComplex out;
    out.b = b;
    out.cells.resize(top + 1);
    auto finalize = [&](int k) {
        for (auto& [key, pc] : pending[k]) {
            TorusCell cell;
            cell.poly = std::move(pc.poly);
            cell.labels.assign(pc.labels.begin(), pc.labels.end());
            out.cells[k].push_back(std::move(cell));
        }
    };

    finalize(top);
    for (int k = top; k >= 1; --k) {
        std::vector<std::map<std::string, Int>> bnd(out.cells[k].size());
        auto level_it = pending[k].begin();
        for (size_t ci = 0; ci < out.cells[k].size(); ++ci, ++level_it) {
            const TorusCell& cell = out.cells[k][ci];
            const std::set<std::string>& labels = level_it->second.labels;
            for (const auto& s : facet_sets_of(cell.poly)) {
                Polytope g = make_face(cell.poly, s);
                int sign = incidence_sign(cell.poly, g);
                Polytope rep = canonical_torus_rep(g);
                std::string key = polytope_key(rep);
                bnd[ci][key] += sign;
                auto [it, fresh] = pending[k - 1].try_emplace(std::move(key));
                if (fresh) it->second.poly = std::move(rep);
                it->second.labels.insert(labels.begin(), labels.end());
            }
        }
        finalize(k - 1);
        std::map<std::string, int> index;
        int pos = 0;
        for (const auto& [key, pc] : pending[k - 1]) index[key] = pos++;
        for (size_t ci = 0; ci < out.cells[k].size(); ++ci)
            for (const auto& [key, v] : bnd[ci])
                if (v != 0) out.cells[k][ci].boundary[index.at(key)] = v;
    }

    // boundary of boundary must vanish cell by cell
    for (int k = 2; k <= top; ++k) {
        for (const TorusCell& cell : out.cells[k]) {
            std::map<int, Int> acc;
            for (const auto& [f, cf] : cell.boundary)
                for (const auto& [g, cg] : out.cells[k - 1][f].boundary) acc[g] += cf * cg;
            for (const auto& [g, v] : acc)
                if (v != 0) throw VerificationError("boundary^2 nonzero");
        }
    }
    return out;
}

void flag_cells(TorusCellComplex& complex, const std::vector<Polytope>& inputs,
                const std::string& label) {
    for (auto& level : complex.cells) {
        for (TorusCell& cell : level) {
            if (cell.has_label(label)) continue;
            Vec c = cell.poly.centroid();
            for (const Polytope& q : inputs) {
                if (contains_mod_lattice(q, c)) {
                    cell.labels.insert(
                        std::upper_bound(cell.labels.begin(), cell.labels.end(), label), label);
                    break;
                }
            }
        }
    }
}

TorusCellComplex theta_skeleton(const VoronoiCell& cell, int d) {
    if (d < 0 || d >= cell.b)
        throw InvalidInput("theta skeleton needs 0 <= d <= b-1");
    std::vector<std::pair<Polytope, std::string>> gens;
    for (const auto& s : cell.faces[d]) {
        std::vector<Vec> pts;
        for (int i : s) pts.push_back(cell.poly.vertices[i]);
        gens.push_back({polytope_from_points(cell.b, std::move(pts)), "theta"});
    }
    return build_torus_complex(cell.b, gens);
}

TorusCellComplex voronoi_torus_complex(const VoronoiCell& cell) {
    return build_torus_complex(cell.b, {{cell.poly, "vor"}});
}

TorusCellComplex cube_torus_skeleton(int b, int d) {
    if (d < 0 || d > b) throw InvalidInput("cube skeleton needs 0 <= d <= b");
    std::vector<std::pair<Polytope, std::string>> gens;
    for (unsigned mask = 0; mask < (1u << b); ++mask) {
        if (__builtin_popcount(mask) != d) continue;
        std::vector<Vec> pts;
        for (unsigned sub = 0;; sub = (sub - mask) & mask) {
            Vec v(b, Rat(0));
            for (int i = 0; i < b; ++i)
                if (sub & (1u << i)) v[i] = 1;
            pts.push_back(std::move(v));
            if (sub == mask) break;
        }
        gens.push_back({polytope_from_points(b, std::move(pts)), "cube"});
    }
    return build_torus_complex(b, gens);
}

} // namespace tropjac
