#include "tropjac/homology.hpp"

#include <algorithm>
#include <map>

#include "tropjac/error.hpp"

namespace tropjac {

namespace {

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/** Per-dimension selected cell indices and the old->new index remap. */
struct Selection {
    std::vector<std::vector<long>> remap; // -1 when not selected
    std::vector<long> count;
};

Selection select_cells(const TorusCellComplex& c, const std::string& flag, bool complement) {
    int top = c.top_dim();
    Selection s;
    s.remap.resize(top + 1);
    s.count.assign(top + 1, 0);
    for (int k = 0; k <= top; ++k) {
        s.remap[k].assign(c.cells[k].size(), -1);
        for (size_t i = 0; i < c.cells[k].size(); ++i) {
            bool in = flag.empty() || c.cells[k][i].has_label(flag);
            if (complement) in = !in;
            if (in) s.remap[k][i] = s.count[k]++;
        }
    }
    return s;
}

void verify_flag_closed(const TorusCellComplex& c, const std::string& flag) {
    for (int k = 1; k <= c.top_dim(); ++k)
        for (const TorusCell& cell : c.cells[k]) {
            if (!cell.has_label(flag)) continue;
            for (const auto& [f, coeff] : cell.boundary)
                if (!c.cells[k - 1][f].has_label(flag))
                    throw InvalidInput("flag '" + flag + "' is not closed under faces");
        }
}

} // namespace

ChainComplexData chain_complex(const TorusCellComplex& c, const std::string& flag) {
    if (!flag.empty()) verify_flag_closed(c, flag);
    Selection s = select_cells(c, flag, false);
    int top = c.top_dim();
    ChainComplexData cc;
    cc.n_cells = s.count;
    cc.boundary.resize(top + 1);
    cc.boundary[0] = SparseIntMat(0, cc.n_cells[0]);
    for (int k = 1; k <= top; ++k) {
        SparseIntMat m(cc.n_cells[k - 1], cc.n_cells[k]);
        for (size_t i = 0; i < c.cells[k].size(); ++i) {
            long ni = s.remap[k][i];
            if (ni < 0) continue;
            for (const auto& [f, coeff] : c.cells[k][i].boundary)
                m.set(s.remap[k - 1][f], ni, coeff); // face closure already verified
        }
        cc.boundary[k] = std::move(m);
    }
    return cc;
}

ChainComplexData relative_chain_complex(const TorusCellComplex& c, const std::string& subflag) {
    if (subflag.empty()) throw InvalidInput("relative complex needs a subcomplex flag");
    verify_flag_closed(c, subflag);
    Selection s = select_cells(c, subflag, true);
    int top = c.top_dim();
    ChainComplexData cc;
    cc.n_cells = s.count;
    cc.boundary.resize(top + 1);
    cc.boundary[0] = SparseIntMat(0, cc.n_cells[0]);
    for (int k = 1; k <= top; ++k) {
        SparseIntMat m(cc.n_cells[k - 1], cc.n_cells[k]);
        for (size_t i = 0; i < c.cells[k].size(); ++i) {
            long ni = s.remap[k][i];
            if (ni < 0) continue;
            for (const auto& [f, coeff] : c.cells[k][i].boundary) {
                long nf = s.remap[k - 1][f];
                if (nf >= 0) m.set(nf, ni, coeff); // faces inside the subcomplex vanish
            }
        }
        cc.boundary[k] = std::move(m);
    }
    return cc;
}

std::vector<HomologyResult> homology(const ChainComplexData& cc) {
    int top = static_cast<int>(cc.n_cells.size()) - 1;
    std::vector<SnfResult> snf(top + 2);
    for (int k = 1; k <= top; ++k) snf[k] = smith_normal_form(cc.boundary[k]);
    std::vector<HomologyResult> h(top + 1);
    for (int k = 0; k <= top; ++k) {
        h[k].dim = k;
        h[k].free_rank = cc.n_cells[k] - snf[k].rank - snf[k + 1].rank;
        h[k].torsion = snf[k + 1].torsion();
        if (h[k].free_rank < 0) throw VerificationError("negative betti number");
    }
    long cells_alt = 0, betti_alt = 0;
    for (int k = 0; k <= top; ++k) {
        long sg = (k % 2 == 0) ? 1 : -1;
        cells_alt += sg * cc.n_cells[k];
        betti_alt += sg * h[k].free_rank;
    }
    if (cells_alt != betti_alt) throw VerificationError("euler characteristic mismatch");
    return h;
}

std::vector<long> betti(const std::vector<HomologyResult>& h) {
    std::vector<long> b;
    for (const HomologyResult& r : h) b.push_back(r.free_rank);
    return b;
}

Rat cell_period(const Polytope& p, const std::vector<int>& subset) {
    int k = p.dim;
    if (static_cast<int>(subset.size()) != k) throw InvalidInput("period subset size mismatch");
    if (k == 0) return 1;
    Rat total = 0;
    for (const auto& simplex : triangulate_fan(p)) {
        std::vector<Vec> edges;
        for (int i = 1; i <= k; ++i)
            edges.push_back(vec_sub(p.vertices[simplex[i]], p.vertices[simplex[0]]));
        Mat orient(k, k), proj(k, k);
        for (int i = 0; i < k; ++i) {
            Vec co = coords_in_rows(p.basis, edges[i]);
            for (int j = 0; j < k; ++j) {
                orient.at(i, j) = co[j];
                proj.at(i, j) = edges[i][subset[j]];
            }
        }
        Rat d1 = det(orient);
        if (d1 == 0) throw VerificationError("degenerate simplex in fan triangulation");
        Rat d2 = det(proj);
        total += (d1 > 0) ? d2 : -d2;
    }
    Rat fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    return total / fact;
}

std::vector<std::vector<int>> coordinate_subsets(int b, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > b) return out;
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
        out.push_back(comb);
        int i = k - 1;
        while (i >= 0 && comb[i] == b - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    return out;
}

namespace {

struct SubSkeleton {
    long n_verts = 0;
    std::map<std::string, int> vert_index;        // reduced coordinate key -> local index
    std::vector<int> vert_cell;                   // local index -> 0-cell index in complex
    struct Edge {
        int cell_idx;  // index in complex.cells[1]
        int tail, head;
        Vec disp;      // head lift minus tail lift
    };
    std::vector<Edge> edges;
};

SubSkeleton sub_skeleton(const TorusCellComplex& c, const std::string& flag) {
    SubSkeleton s;
    if (c.top_dim() < 0) return s;
    for (size_t i = 0; i < c.cells[0].size(); ++i) {
        const TorusCell& cell = c.cells[0][i];
        if (!flag.empty() && !cell.has_label(flag)) continue;
        s.vert_index[format_vec(cell.poly.vertices[0])] = static_cast<int>(s.n_verts++);
        s.vert_cell.push_back(static_cast<int>(i));
    }
    if (c.top_dim() < 1) return s;
    for (size_t i = 0; i < c.cells[1].size(); ++i) {
        const TorusCell& cell = c.cells[1][i];
        if (!flag.empty() && !cell.has_label(flag)) continue;
        const Vec& a = cell.poly.vertices[0];
        const Vec& b = cell.poly.vertices[1];
        auto ta = s.vert_index.find(format_vec(torus_reduce(a)));
        auto hb = s.vert_index.find(format_vec(torus_reduce(b)));
        if (ta == s.vert_index.end() || hb == s.vert_index.end())
            throw VerificationError("edge endpoint missing from 0-cells");
        s.edges.push_back({static_cast<int>(i), ta->second, hb->second, vec_sub(b, a)});
    }
    return s;
}

struct Forest {
    std::vector<int> parent;                 // union-find
    std::vector<char> in_tree;               // per skeleton edge
    std::vector<Vec> potential;              // tree-path winding from the component root

    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
};

Forest spanning_forest(const SubSkeleton& s, int b) {
    Forest f;
    f.parent.resize(s.n_verts);
    for (long i = 0; i < s.n_verts; ++i) f.parent[i] = static_cast<int>(i);
    f.in_tree.assign(s.edges.size(), 0);
    std::vector<std::vector<std::pair<int, int>>> adj(s.n_verts); // (edge idx, direction)
    for (size_t e = 0; e < s.edges.size(); ++e) {
        int t = s.edges[e].tail, h = s.edges[e].head;
        int rt = f.find(t), rh = f.find(h);
        if (rt == rh) continue;
        f.parent[rt] = rh;
        f.in_tree[e] = 1;
        adj[t].push_back({static_cast<int>(e), +1});
        adj[h].push_back({static_cast<int>(e), -1});
    }
    f.potential.assign(s.n_verts, Vec(b, Rat(0)));
    std::vector<char> seen(s.n_verts, 0);
    for (long r = 0; r < s.n_verts; ++r) {
        if (seen[r]) continue;
        std::vector<int> stack{static_cast<int>(r)};
        seen[r] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [e, dir] : adj[v]) {
                int w = (dir > 0) ? s.edges[e].head : s.edges[e].tail;
                if (seen[w]) continue;
                seen[w] = 1;
                Vec step = s.edges[e].disp;
                if (dir < 0) step = vec_scale(step, Rat(-1));
                f.potential[w] = vec_add(f.potential[v], step);
                stack.push_back(w);
            }
        }
    }
    return f;
}

IVec integral_or_throw(const Vec& v, const char* what) {
    IVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (!rat_is_int(v[i])) throw VerificationError(std::string(what) + " is not integral");
        out[i] = rat_num(v[i]);
    }
    return out;
}

InducedMapReport induced_map_dim0(const TorusCellComplex& c, const std::string& flag) {
    InducedMapReport r;
    r.k = 0;
    r.total_rank = 1;
    r.z_certified = true;
    SubSkeleton s = sub_skeleton(c, flag);
    if (s.n_verts == 0) return r;
    Forest f = spanning_forest(s, c.b);
    long comps = 0;
    for (long v = 0; v < s.n_verts; ++v)
        if (f.find(static_cast<int>(v)) == v) ++comps;
    r.sub_free_rank = comps;
    r.map_rank = 1;
    r.surjective = true;
    r.injective = comps == 1;
    r.matrix = {IVec(comps, Int(1))};
    return r;
}

InducedMapReport induced_map_dim1(const TorusCellComplex& c, const std::string& flag) {
    InducedMapReport r;
    r.k = 1;
    r.total_rank = c.b;
    r.z_certified = true;
    SubSkeleton s = sub_skeleton(c, flag);
    Forest f = spanning_forest(s, c.b);

    std::vector<long> nontree_pos(s.edges.size(), -1); // skeleton edge -> cycle coordinate
    std::vector<long> cell_to_nontree(c.top_dim() >= 1 ? c.cells[1].size() : 0, -1);
    long nt = 0;
    std::vector<IVec> w_cols;
    for (size_t e = 0; e < s.edges.size(); ++e) {
        if (f.in_tree[e]) continue;
        nontree_pos[e] = nt;
        cell_to_nontree[s.edges[e].cell_idx] = nt;
        Vec wind = vec_add(s.edges[e].disp, vec_sub(f.potential[s.edges[e].tail],
                                                    f.potential[s.edges[e].head]));
        w_cols.push_back(integral_or_throw(wind, "fundamental cycle winding"));
        ++nt;
    }

    // relations: boundaries of flagged 2-cells in fundamental-cycle coordinates
    SparseIntMat rel(nt, 0);
    long n2 = 0;
    if (c.top_dim() >= 2) {
        for (const TorusCell& cell : c.cells[2]) {
            if (!flag.empty() && !cell.has_label(flag)) continue;
            ++n2;
        }
        rel = SparseIntMat(nt, n2);
        long col = 0;
        for (const TorusCell& cell : c.cells[2]) {
            if (!flag.empty() && !cell.has_label(flag)) continue;
            for (const auto& [eidx, coeff] : cell.boundary) {
                long pos = cell_to_nontree[eidx];
                if (pos >= 0) rel.set(pos, col, coeff);
            }
            ++col;
        }
    } else {
        rel = SparseIntMat(nt, 0);
    }

    // winding kills boundaries: W * rel must vanish
    std::vector<IVec> wr(rel.cols, IVec(c.b, Int(0)));
    for (long i = 0; i < rel.rows; ++i)
        for (const auto& [j, v] : rel.row[i])
            for (int x = 0; x < c.b; ++x) wr[j][x] += v * w_cols[i][x];
    for (const IVec& col : wr)
        for (const Int& x : col)
            if (x != 0) throw VerificationError("boundary cycle with nonzero winding");

    SnfResult rel_snf = smith_normal_form(rel);
    r.sub_free_rank = nt - rel_snf.rank;
    r.sub_torsion = rel_snf.torsion();

    SparseIntMat w(c.b, nt);
    r.matrix.assign(c.b, IVec(nt, Int(0)));
    for (long j = 0; j < nt; ++j)
        for (int i = 0; i < c.b; ++i) {
            w.set(i, j, w_cols[j][i]);
            r.matrix[i][j] = w_cols[j][i];
        }
    SnfResult wsnf = smith_normal_form(w);
    r.map_rank = wsnf.rank;
    bool units = true;
    for (const Int& v : wsnf.invariant_factors)
        if (v != 1) units = false;
    r.surjective = (wsnf.rank == c.b) && units;
    r.injective = r.sub_torsion.empty() && r.map_rank == r.sub_free_rank;
    return r;
}

/** Periods of all selected k-cells: one rational row per coordinate subset. */
std::vector<std::vector<Rat>> period_rows(const TorusCellComplex& c, const std::string& flag,
                                          int k) {
    auto subsets = coordinate_subsets(c.b, k);
    std::vector<std::vector<Rat>> rows(subsets.size());
    for (size_t si = 0; si < subsets.size(); ++si) {
        for (const TorusCell& cell : c.cells[k]) {
            if (!flag.empty() && !cell.has_label(flag)) continue;
            rows[si].push_back(cell_period(cell.poly, subsets[si]));
        }
    }
    return rows;
}

long stacked_map_rank(const ChainComplexData& sub, const std::vector<std::vector<Rat>>& periods,
                      int k, long rank_dk) {
    // rank of the period map restricted to cycles:
    // rank [boundary_k ; periods] - rank boundary_k
    long nk = sub.n_cells[k];
    long extra = static_cast<long>(periods.size());
    SparseIntMat stacked(sub.boundary[k].rows + extra, nk);
    for (long i = 0; i < sub.boundary[k].rows; ++i)
        for (const auto& [j, v] : sub.boundary[k].row[i]) stacked.set(i, j, v);
    Int denom = 1;
    for (const auto& row : periods)
        for (const Rat& x : row) denom = boost::multiprecision::lcm(denom, rat_den(x));
    for (long i = 0; i < extra; ++i)
        for (long j = 0; j < nk; ++j) {
            Rat scaled = periods[i][j] * Rat(denom);
            stacked.set(sub.boundary[k].rows + i, j, rat_num(scaled));
        }
    return sparse_rank(std::move(stacked)) - rank_dk;
}

InducedMapReport induced_map_generic(const TorusCellComplex& c, const std::string& flag, int k) {
    InducedMapReport r;
    r.k = k;
    r.total_rank = binom(c.b, k);
    ChainComplexData sub = chain_complex(c, flag);
    if (k > static_cast<int>(sub.n_cells.size()) - 1 || sub.n_cells[k] == 0) {
        r.z_certified = true;
        r.surjective = r.total_rank == 0;
        r.injective = true;
        return r;
    }
    SnfResult snf_k = smith_normal_form(sub.boundary[k]);
    SnfResult snf_k1 = (k + 1 < static_cast<int>(sub.boundary.size()))
                           ? smith_normal_form(sub.boundary[k + 1])
                           : SnfResult{};
    long nk = sub.n_cells[k];
    r.sub_free_rank = nk - snf_k.rank - snf_k1.rank;
    r.sub_torsion = snf_k1.torsion();

    auto periods = period_rows(c, flag, k);
    const long kernel_guard = 1500;
    if (nk <= kernel_guard) {
        std::vector<IVec> dense(sub.boundary[k].rows, IVec(nk, Int(0)));
        for (long i = 0; i < sub.boundary[k].rows; ++i)
            for (const auto& [j, v] : sub.boundary[k].row[i]) dense[i][j] = v;
        std::vector<IVec> kernel = integer_kernel(dense, nk);
        SparseIntMat m(static_cast<long>(periods.size()), static_cast<long>(kernel.size()));
        r.matrix.assign(periods.size(), IVec(kernel.size(), Int(0)));
        for (size_t col = 0; col < kernel.size(); ++col) {
            for (size_t row = 0; row < periods.size(); ++row) {
                Rat acc = 0;
                for (long j = 0; j < nk; ++j)
                    if (kernel[col][j] != 0) acc += Rat(kernel[col][j]) * periods[row][j];
                if (!rat_is_int(acc)) throw VerificationError("cycle period is not integral");
                m.set(static_cast<long>(row), static_cast<long>(col), rat_num(acc));
                r.matrix[row][col] = rat_num(acc);
            }
        }
        SnfResult msnf = smith_normal_form(m);
        r.map_rank = msnf.rank;
        bool units = true;
        for (const Int& v : msnf.invariant_factors)
            if (v != 1) units = false;
        r.surjective = (msnf.rank == r.total_rank) && units;
        r.injective = r.sub_torsion.empty() && r.map_rank == r.sub_free_rank;
        r.z_certified = true;
    } else {
        r.map_rank = stacked_map_rank(sub, periods, k, snf_k.rank);
        r.surjective = r.map_rank == r.total_rank; // rank verdict only
        r.injective = r.sub_torsion.empty() && r.map_rank == r.sub_free_rank;
        r.z_certified = false;
    }
    return r;
}

} // namespace

InducedMapReport induced_map(const TorusCellComplex& c, const std::string& flag, int k) {
    if (k < 0) throw InvalidInput("negative homology dimension");
    if (k == 0) return induced_map_dim0(c, flag);
    if (k == 1) return induced_map_dim1(c, flag);
    return induced_map_generic(c, flag, k);
}

long induced_map_rank(const TorusCellComplex& c, const std::string& flag, int k) {
    if (k == 0) {
        SubSkeleton s = sub_skeleton(c, flag);
        return s.n_verts > 0 ? 1 : 0;
    }
    if (k == 1) {
        SubSkeleton s = sub_skeleton(c, flag);
        Forest f = spanning_forest(s, c.b);
        SparseIntMat w(c.b, 0);
        std::vector<IVec> cols;
        for (size_t e = 0; e < s.edges.size(); ++e) {
            if (f.in_tree[e]) continue;
            Vec wind = vec_add(s.edges[e].disp, vec_sub(f.potential[s.edges[e].tail],
                                                        f.potential[s.edges[e].head]));
            cols.push_back(integral_or_throw(wind, "fundamental cycle winding"));
        }
        w = SparseIntMat(c.b, static_cast<long>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j)
            for (int i = 0; i < c.b; ++i) w.set(i, static_cast<long>(j), cols[j][i]);
        return sparse_rank(std::move(w));
    }
    if (k > c.top_dim()) return 0;
    ChainComplexData sub = chain_complex(c, flag);
    if (k > static_cast<int>(sub.n_cells.size()) - 1 || sub.n_cells[k] == 0) return 0;
    long rank_dk = sparse_rank(sub.boundary[k]);
    auto periods = period_rows(c, flag, k);
    return stacked_map_rank(sub, periods, k, rank_dk);
}

bool les_rank_check(const std::vector<long>& betti_sub, const std::vector<long>& betti_tot,
                    const std::vector<long>& betti_pair, const std::vector<long>& map_ranks) {
    size_t n = std::max({betti_sub.size(), betti_tot.size(), betti_pair.size(), map_ranks.size()});
    auto get = [](const std::vector<long>& v, long i) -> long {
        return (i >= 0 && i < static_cast<long>(v.size())) ? v[i] : 0;
    };
    for (long i = 0; i <= static_cast<long>(n); ++i) {
        long lhs = get(betti_pair, i) - get(betti_tot, i) + get(map_ranks, i);
        long rhs = get(betti_sub, i - 1) - get(map_ranks, i - 1);
        if (lhs != rhs) return false;
    }
    return true;
}

} // namespace tropjac
