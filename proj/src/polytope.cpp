#include "tropjac/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tropjac/error.hpp"

namespace tropjac {

Rat hyperplane_eval(const Hyperplane& h, const Vec& x) {
    Rat s = -h.offset;
    for (size_t i = 0; i < h.normal.size(); ++i)
        if (h.normal[i] != 0) s += Rat(h.normal[i]) * x[i];
    return s;
}

Vec Polytope::centroid() const {
    Vec c(ambient, Rat(0));
    for (const Vec& v : vertices) c = vec_add(c, v);
    return vec_scale(c, Rat(1, static_cast<long>(vertices.size())));
}

namespace {

/** Positive scaling of a rational functional to a primitive integer one
 *  (keeps the inequality sense). Returns the scale applied. */
Hyperplane lift_functional(const Vec& normal, const Rat& offset) {
    Int l = 1;
    for (const Rat& x : normal) l = boost::multiprecision::lcm(l, rat_den(x));
    IVec w(normal.size());
    Int g = 0;
    for (size_t i = 0; i < normal.size(); ++i) {
        w[i] = rat_num(normal[i]) * (l / rat_den(normal[i]));
        g = boost::multiprecision::gcd(g, w[i]);
    }
    if (g == 0) throw VerificationError("zero facet normal");
    for (Int& x : w) x /= g;
    Rat scale = Rat(l) / Rat(g);
    return Hyperplane{std::move(w), offset * scale};
}

/** Canonical (sign-normalized) hyperplane through base with the given normal. */
Hyperplane canonical_eq(const Vec& normal, const Vec& base) {
    IVec n = primitive_integer(normal);
    Rat off = 0;
    for (size_t i = 0; i < n.size(); ++i)
        if (n[i] != 0) off += Rat(n[i]) * base[i];
    return Hyperplane{std::move(n), off};
}

} // namespace

Hyperplane make_halfspace(const Vec& normal, const Rat& offset) {
    return lift_functional(normal, offset);
}

Polytope polytope_from_points(int ambient, std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end(), VecLess{});
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Polytope p;
    p.ambient = ambient;
    if (pts.empty()) return p;

    // Affine hull from greedy independent difference vectors.
    std::vector<Vec> diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vec_sub(pts[i], pts[0]));
    std::vector<int> idx = greedy_independent(diffs);
    p.dim = static_cast<int>(idx.size());
    for (int i : idx) p.basis.push_back(diffs[i]);
    for (const Vec& n : perp_basis(p.basis, ambient)) p.aff_eqs.push_back(canonical_eq(n, pts[0]));
    std::sort(p.aff_eqs.begin(), p.aff_eqs.end());

    if (p.dim == 0) {
        p.vertices = {pts[0]};
        return p;
    }

    // Parameter coordinates u(x) with x = base + B^T u: u = (B B^T)^{-1} B (x - base).
    int k = p.dim;
    Mat bbt(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) bbt.at(i, j) = vec_dot(p.basis[i], p.basis[j]);
    Mat bbt_inv = inverse(bbt);
    Mat proj(k, ambient); // u(x) = proj * (x - base)
    for (int i = 0; i < k; ++i) {
        Vec row(ambient, Rat(0));
        for (int j = 0; j < k; ++j) row = vec_add(row, vec_scale(p.basis[j], bbt_inv.at(i, j)));
        for (int c = 0; c < ambient; ++c) proj.at(i, c) = row[c];
    }
    const Vec base = pts[0];
    auto to_u = [&](const Vec& x) { return mat_vec(proj, vec_sub(x, base)); };
    std::vector<Vec> us(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) us[i] = to_u(pts[i]);

    // Brute-force facet enumeration in u-space.
    int n_pts = static_cast<int>(pts.size());
    std::set<std::pair<IVec, Rat>> facet_keys;
    std::vector<std::pair<Vec, Rat>> facets_u; // m.u <= c
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    auto next_comb = [&]() {
        int i = k - 1;
        while (i >= 0 && comb[i] == n_pts - k + i) --i;
        if (i < 0) return false;
        ++comb[i];
        for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        return true;
    };
    if (n_pts >= k) {
        do {
            std::vector<Vec> d;
            for (int i = 1; i < k; ++i) d.push_back(vec_sub(us[comb[i]], us[comb[0]]));
            std::vector<Vec> ns = perp_basis(d, k);
            if (ns.size() != 1) continue; // subset does not span a hyperplane
            Vec m = ns[0];
            Rat c = vec_dot(m, us[comb[0]]);
            bool above = false, below = false;
            for (const Vec& u : us) {
                Rat v = vec_dot(m, u) - c;
                if (v > 0) above = true;
                else if (v < 0) below = true;
                if (above && below) break;
            }
            if (above && below) continue;
            if (above) {
                m = vec_scale(m, Rat(-1));
                c = -c;
            }
            IVec key = primitive_integer(m);
            Rat key_off = 0;
            {
                // offset scaled consistently with the primitive normal
                size_t lead = 0;
                while (lead < m.size() && m[lead] == 0) ++lead;
                Rat factor = Rat(key[lead]) / m[lead];
                key_off = c * factor;
                if (factor < 0) {
                    for (Int& x : key) x = -x;
                    key_off = -key_off;
                    factor = -factor;
                }
                if (!facet_keys.insert({key, key_off}).second) continue;
                facets_u.push_back({vec_scale(m, factor), key_off});
            }
        } while (next_comb());
    }

    // Extreme points: tight facet normals span the full parameter space.
    std::vector<Vec> extremes;
    for (int i = 0; i < n_pts; ++i) {
        std::vector<Vec> tight;
        for (const auto& [m, c] : facets_u)
            if (vec_dot(m, us[i]) == c) tight.push_back(m);
        if (static_cast<int>(greedy_independent(tight).size()) == k) extremes.push_back(pts[i]);
    }
    p.vertices = std::move(extremes);
    std::sort(p.vertices.begin(), p.vertices.end(), VecLess{});

    // Lift facet functionals to ambient coordinates: m.u(x) <= c.
    for (const auto& [m, c] : facets_u) {
        Vec n_amb(ambient, Rat(0));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < ambient; ++j) n_amb[j] += m[i] * proj.at(i, j);
        Rat off = c + vec_dot(n_amb, base);
        p.facets.push_back(lift_functional(n_amb, off));
    }
    std::sort(p.facets.begin(), p.facets.end());
    return p;
}

std::vector<Vec> vertices_from_hrep(int ambient, const std::vector<Hyperplane>& eqs,
                                    const std::vector<Hyperplane>& ineqs) {
    std::vector<Vec> eq_rows;
    for (const Hyperplane& h : eqs) eq_rows.push_back(ivec_to_vec(h.normal));
    int eq_rank = static_cast<int>(greedy_independent(eq_rows).size());
    int free_dim = ambient - eq_rank;
    int m = static_cast<int>(ineqs.size());
    if (free_dim < 0) return {};

    std::set<Vec, VecLess> found;
    std::vector<int> comb(free_dim);
    for (int i = 0; i < free_dim; ++i) comb[i] = i;
    auto next_comb = [&]() {
        int i = free_dim - 1;
        while (i >= 0 && comb[i] == m - free_dim + i) --i;
        if (i < 0) return false;
        ++comb[i];
        for (int j = i + 1; j < free_dim; ++j) comb[j] = comb[j - 1] + 1;
        return true;
    };
    if (m < free_dim) return {};
    auto try_subset = [&]() {
        Mat a(static_cast<int>(eqs.size()) + free_dim, ambient);
        Vec rhs;
        int r = 0;
        for (const Hyperplane& h : eqs) {
            for (int j = 0; j < ambient; ++j) a.at(r, j) = Rat(h.normal[j]);
            rhs.push_back(h.offset);
            ++r;
        }
        for (int i = 0; i < free_dim; ++i) {
            const Hyperplane& h = ineqs[comb[i]];
            for (int j = 0; j < ambient; ++j) a.at(r, j) = Rat(h.normal[j]);
            rhs.push_back(h.offset);
            ++r;
        }
        if (rank(a) != ambient) return;
        auto x = solve_any(a, rhs);
        if (!x) return;
        for (const Hyperplane& h : ineqs)
            if (hyperplane_eval(h, *x) > 0) return;
        found.insert(*x);
    };
    if (free_dim == 0) {
        comb.clear();
        Mat a(static_cast<int>(eqs.size()), ambient);
        Vec rhs;
        for (size_t i = 0; i < eqs.size(); ++i) {
            for (int j = 0; j < ambient; ++j) a.at(static_cast<int>(i), j) = Rat(eqs[i].normal[j]);
            rhs.push_back(eqs[i].offset);
        }
        auto x = solve_any(a, rhs);
        if (x) {
            bool ok = true;
            for (const Hyperplane& h : ineqs)
                if (hyperplane_eval(h, *x) > 0) { ok = false; break; }
            if (ok) found.insert(*x);
        }
    } else {
        do { try_subset(); } while (next_comb());
    }
    return std::vector<Vec>(found.begin(), found.end());
}

bool polytope_contains(const Polytope& p, const Vec& x) {
    if (p.empty()) return false;
    for (const Hyperplane& h : p.aff_eqs)
        if (hyperplane_eval(h, x) != 0) return false;
    for (const Hyperplane& h : p.facets)
        if (hyperplane_eval(h, x) > 0) return false;
    if (p.dim == 0) return x == p.vertices[0];
    return true;
}

Polytope translate(const Polytope& p, const Vec& t) {
    Polytope q = p;
    for (Vec& v : q.vertices) v = vec_add(v, t);
    for (Hyperplane& h : q.aff_eqs) h.offset += vec_dot(ivec_to_vec(h.normal), t);
    for (Hyperplane& h : q.facets) h.offset += vec_dot(ivec_to_vec(h.normal), t);
    return q;
}

std::vector<std::vector<std::vector<int>>> face_lattice(const Polytope& p) {
    std::vector<std::vector<std::vector<int>>> levels(p.dim + 1);
    if (p.empty()) return levels;
    int n = static_cast<int>(p.vertices.size());
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    // Tight vertex sets of the facet hyperplanes.
    std::vector<std::vector<int>> facet_sets;
    for (const Hyperplane& h : p.facets) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (hyperplane_eval(h, p.vertices[i]) == 0) s.push_back(i);
        facet_sets.push_back(std::move(s));
    }
    auto face_dim = [&](const std::vector<int>& s) {
        std::vector<Vec> pts;
        for (int i : s) pts.push_back(p.vertices[i]);
        return affine_rank(pts);
    };
    std::map<std::vector<int>, int> seen; // face vertex set -> dim
    std::vector<std::vector<int>> queue{all};
    seen[all] = p.dim;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        std::vector<int> cur = queue[qi];
        for (const auto& fs : facet_sets) {
            std::vector<int> inter;
            std::set_intersection(cur.begin(), cur.end(), fs.begin(), fs.end(),
                                  std::back_inserter(inter));
            if (inter.empty() || inter == cur) continue;
            if (seen.count(inter)) continue;
            seen[inter] = face_dim(inter);
            queue.push_back(inter);
        }
    }
    for (const auto& [s, d] : seen) levels.at(d).push_back(s);
    for (auto& level : levels) std::sort(level.begin(), level.end());
    return levels;
}

std::vector<std::vector<int>> triangulate_fan(const Polytope& p) {
    if (p.empty()) return {};
    if (p.dim == 0) return {{0}};
    auto levels = face_lattice(p);
    std::vector<std::vector<int>> out;
    const int apex = 0; // lex-smallest vertex
    for (const auto& facet : levels[p.dim - 1]) {
        if (std::find(facet.begin(), facet.end(), apex) != facet.end()) continue;
        std::vector<Vec> fpts;
        for (int i : facet) fpts.push_back(p.vertices[i]);
        Polytope sub = polytope_from_points(p.ambient, fpts);
        for (const auto& simplex : triangulate_fan(sub)) {
            std::vector<int> s{apex};
            for (int si : simplex) {
                // map sub-vertex back to the parent index (coordinates match exactly)
                const Vec& coord = sub.vertices[si];
                auto it = std::lower_bound(p.vertices.begin(), p.vertices.end(), coord, VecLess{});
                s.push_back(static_cast<int>(it - p.vertices.begin()));
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::pair<Polytope, Polytope> split_polytope(const Polytope& p, const Hyperplane& h) {
    Polytope none;
    none.ambient = p.ambient;
    if (p.empty()) return {none, none};
    std::vector<Rat> val(p.vertices.size());
    bool below = false, above = false;
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        val[i] = hyperplane_eval(h, p.vertices[i]);
        below = below || val[i] < 0;
        above = above || val[i] > 0;
    }
    if (!above) return {p, none};
    if (!below) return {none, p};
    std::vector<Vec> lo, hi;
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        if (val[i] <= 0) lo.push_back(p.vertices[i]);
        if (val[i] >= 0) hi.push_back(p.vertices[i]);
    }
    auto levels = face_lattice(p);
    for (const auto& edge : levels[1]) {
        size_t u = edge[0], v = edge[1];
        if ((val[u] < 0 && val[v] > 0) || (val[u] > 0 && val[v] < 0)) {
            Rat t = val[u] / (val[u] - val[v]);
            Vec x = vec_add(p.vertices[u], vec_scale(vec_sub(p.vertices[v], p.vertices[u]), t));
            lo.push_back(x);
            hi.push_back(x);
        }
    }
    return {polytope_from_points(p.ambient, std::move(lo)),
            polytope_from_points(p.ambient, std::move(hi))};
}

std::string polytope_key(const Polytope& p) {
    std::string s;
    for (const Vec& v : p.vertices) {
        s += format_vec(v);
        s += ";";
    }
    return s;
}

} // namespace tropjac
