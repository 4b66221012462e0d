#include "tropjac/linear_series.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "tropjac/polytope.hpp"
#include "tropjac/symd.hpp"

namespace tropjac {

namespace {

std::string divisor_pattern(const Divisor& d) {
    std::string s;
    for (const auto& [p, c] : d.coeff) {
        if (p.is_vertex())
            s += "v" + std::to_string(p.vertex);
        else
            s += "e" + std::to_string(p.edge) + "@" + format_rat(p.offset);
        s += "*" + c.str() + "|";
    }
    return s;
}

Divisor divisor_at(const MetricGraph& g, const SymCell& cell, const Vec& t) {
    Divisor d;
    size_t idx = 0;
    for (const auto& [e, m] : cell.mult)
        for (int j = 0; j < m; ++j) d.add(make_point(g, e, t[idx++]), 1);
    return d;
}

struct Piece {
    SymCell cell;
    Polytope poly; // fiber in the sorted-position coordinates of the cell
};

// Fiber of the Abel-Jacobi map over y (mod Z^b) inside one cell of Sym^d:
// positions per edge are chained 0 <= t_1 <= ... <= t_m <= len, and the
// image constraint is one affine equation per torus coordinate and winding.
void append_pieces(const JacobianData& jd, const SymCell& cell, const Vec& y,
                   std::vector<Piece>& out) {
    int b = jd.b;
    int n = 0;
    for (const auto& [e, m] : cell.mult) n += m;

    Vec base(b, Rat(0));
    for (const auto& [e, m] : cell.mult)
        base = vec_add(base, vec_scale(jd.mu_vertex[jd.graph.edges[e].tail], Rat(m)));
    Vec lo = base, hi = base;
    for (const auto& [e, m] : cell.mult)
        for (int c = 0; c < b; ++c) {
            Rat span = jd.velocity[e][c] * Rat(m) * jd.graph.edges[e].length;
            (span < 0 ? lo : hi)[c] += span;
        }

    std::vector<Hyperplane> ineqs;
    {
        int off = 0;
        for (const auto& [e, m] : cell.mult) {
            Vec first(n, Rat(0));
            first[off] = -1;
            ineqs.push_back(make_halfspace(first, Rat(0)));
            for (int j = 0; j + 1 < m; ++j) {
                Vec step(n, Rat(0));
                step[off + j] = 1;
                step[off + j + 1] = -1;
                ineqs.push_back(make_halfspace(step, Rat(0)));
            }
            Vec last(n, Rat(0));
            last[off + m - 1] = 1;
            ineqs.push_back(make_halfspace(last, jd.graph.edges[e].length));
            off += m;
        }
    }

    std::vector<Int> klo(b), khi(b);
    for (int c = 0; c < b; ++c) {
        klo[c] = rat_ceil(lo[c] - y[c]);
        khi[c] = rat_floor(hi[c] - y[c]);
        if (klo[c] > khi[c]) return;
    }
    std::vector<Int> lam = klo;
    while (true) {
        bool ok = true;
        std::vector<Hyperplane> eqs;
        for (int c = 0; c < b && ok; ++c) {
            Rat rhs = y[c] + Rat(lam[c]) - base[c];
            Vec row(n, Rat(0));
            bool zero = true;
            int off = 0;
            for (const auto& [e, m] : cell.mult) {
                for (int j = 0; j < m; ++j) row[off + j] = jd.velocity[e][c];
                if (jd.velocity[e][c] != 0) zero = false;
                off += m;
            }
            if (zero)
                ok = rhs == 0;
            else
                eqs.push_back(make_halfspace(row, rhs));
        }
        if (ok) {
            std::vector<Vec> verts = vertices_from_hrep(n, eqs, ineqs);
            if (!verts.empty())
                out.push_back({cell, polytope_from_points(n, std::move(verts))});
        }
        int c = 0;
        while (c < b && lam[c] == khi[c]) {
            lam[c] = klo[c];
            ++c;
        }
        if (c == b) return;
        ++lam[c];
    }
}

} // namespace

LinearSeries linear_series(const JacobianData& jd, const Divisor& div, const Guards& guards) {
    LinearSeries ls;
    ls.degree = div.degree();
    if (ls.degree < 0) return ls;
    int d = ls.degree.convert_to<int>();
    Vec y = aj_divisor(jd, div);

    if (d == 0) {
        for (const auto& c : y)
            if (c != 0) return ls;
        ls.faces.push_back({"0", 0, Divisor{}});
        ls.faces_by_dim = {1};
        ChainComplexData cc;
        cc.n_cells = {1};
        cc.boundary = {SparseIntMat(0, 1)};
        ls.homology = homology(cc);
        return ls;
    }

    std::vector<Piece> pieces;
    for (const SymCell& cell : sym_cells(jd.graph, d, guards)) append_pieces(jd, cell, y, pieces);
    if (pieces.empty()) return ls;

    struct Node {
        int dim = 0;
        std::string key;
        Divisor sample;
    };
    std::vector<Node> nodes;
    std::map<std::string, int> key_to_node;
    std::vector<std::vector<int>> piece_nodes(pieces.size());
    std::set<std::pair<int, int>> rel;

    for (size_t pi = 0; pi < pieces.size(); ++pi) {
        const Piece& piece = pieces[pi];
        auto lattice = face_lattice(piece.poly);
        std::vector<std::vector<int>> face_sets;
        std::vector<int> face_node;
        for (int k = 0; k < static_cast<int>(lattice.size()); ++k)
            for (const auto& fverts : lattice[k]) {
                std::vector<std::string> corner;
                corner.reserve(fverts.size());
                for (int vi : fverts)
                    corner.push_back(
                        divisor_pattern(divisor_at(jd.graph, piece.cell, piece.poly.vertices[vi])));
                std::sort(corner.begin(), corner.end());
                std::string key;
                for (const auto& s : corner) {
                    key += s;
                    key += "&";
                }
                int id;
                auto it = key_to_node.find(key);
                if (it == key_to_node.end()) {
                    Vec cen(piece.poly.ambient, Rat(0));
                    for (int vi : fverts) cen = vec_add(cen, piece.poly.vertices[vi]);
                    cen = vec_scale(cen, Rat(1) / Rat(static_cast<long>(fverts.size())));
                    id = static_cast<int>(nodes.size());
                    nodes.push_back({k, key, divisor_at(jd.graph, piece.cell, cen)});
                    key_to_node.emplace(key, id);
                } else {
                    id = it->second;
                    if (nodes[id].dim != k)
                        throw VerificationError("inconsistent face gluing in linear series");
                }
                face_sets.push_back(fverts);
                face_node.push_back(id);
            }
        for (size_t a = 0; a < face_sets.size(); ++a)
            for (size_t c = 0; c < face_sets.size(); ++c) {
                if (a == c || face_sets[a].size() >= face_sets[c].size()) continue;
                if (std::includes(face_sets[c].begin(), face_sets[c].end(), face_sets[a].begin(),
                                  face_sets[a].end()))
                    rel.emplace(face_node[a], face_node[c]);
            }
        piece_nodes[pi] = face_node;
        std::sort(piece_nodes[pi].begin(), piece_nodes[pi].end());
    }

    int n = static_cast<int>(nodes.size());
    std::vector<std::set<int>> above(n);
    for (const auto& [a, c] : rel) above[a].insert(c);
    for (int i = 0; i < n; ++i) { // transitive closure by DFS
        std::vector<int> stack(above[i].begin(), above[i].end());
        std::set<int> seen = above[i];
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : above[v])
                if (seen.insert(w).second) stack.push_back(w);
        }
        above[i] = std::move(seen);
    }

    // Any two overlapping fibers must meet in a single greatest common face.
    for (size_t i = 0; i < pieces.size(); ++i)
        for (size_t j = i + 1; j < pieces.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(piece_nodes[i].begin(), piece_nodes[i].end(),
                                  piece_nodes[j].begin(), piece_nodes[j].end(),
                                  std::back_inserter(common));
            if (common.empty()) continue;
            bool found = false;
            for (int g : common) {
                bool greatest = true;
                for (int c : common)
                    if (c != g && !above[c].count(g)) {
                        greatest = false;
                        break;
                    }
                if (greatest) {
                    found = true;
                    break;
                }
            }
            if (!found) throw VerificationError("fiber cells overlap without a common face");
        }

    // reindex by (dim, key); relations only point up in dimension
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int c) {
        if (nodes[a].dim != nodes[c].dim) return nodes[a].dim < nodes[c].dim;
        return nodes[a].key < nodes[c].key;
    });
    std::vector<int> new_id(n);
    for (int i = 0; i < n; ++i) new_id[order[i]] = i;
    std::vector<std::vector<int>> up(n);
    for (int i = 0; i < n; ++i) {
        for (int j : above[i]) up[new_id[i]].push_back(new_id[j]);
        std::sort(up[new_id[i]].begin(), up[new_id[i]].end());
    }

    ls.faces.reserve(n);
    for (int i = 0; i < n; ++i) {
        const Node& nd = nodes[order[i]];
        ls.faces.push_back({nd.key, nd.dim, nd.sample});
        if (static_cast<int>(ls.faces_by_dim.size()) <= nd.dim) ls.faces_by_dim.resize(nd.dim + 1, 0);
        ++ls.faces_by_dim[nd.dim];
    }

    // order complex: chains are strictly increasing paths in the closed order
    std::vector<std::map<std::vector<int>, long>> level;
    std::vector<std::vector<std::vector<int>>> chain_list;
    long total = 0;
    std::vector<int> ch;
    std::function<void()> gen = [&]() {
        int k = static_cast<int>(ch.size()) - 1;
        if (static_cast<int>(chain_list.size()) <= k) {
            chain_list.resize(k + 1);
            level.resize(k + 1);
        }
        level[k].emplace(ch, static_cast<long>(chain_list[k].size()));
        chain_list[k].push_back(ch);
        if (++total > 500000) throw VerificationError("order complex too large");
        for (int nx : up[ch.back()]) {
            ch.push_back(nx);
            gen();
            ch.pop_back();
        }
    };
    for (int i = 0; i < n; ++i) {
        ch.assign(1, i);
        gen();
    }

    ChainComplexData cc;
    int top = static_cast<int>(chain_list.size()) - 1;
    cc.n_cells.resize(top + 1);
    for (int k = 0; k <= top; ++k) cc.n_cells[k] = static_cast<long>(chain_list[k].size());
    cc.boundary.resize(top + 1);
    cc.boundary[0] = SparseIntMat(0, cc.n_cells[0]);
    for (int k = 1; k <= top; ++k) {
        SparseIntMat m(cc.n_cells[k - 1], cc.n_cells[k]);
        for (long idx = 0; idx < cc.n_cells[k]; ++idx) {
            const auto& chain = chain_list[k][idx];
            for (int i = 0; i <= k; ++i) {
                std::vector<int> sub;
                sub.reserve(k);
                for (int j = 0; j <= k; ++j)
                    if (j != i) sub.push_back(chain[j]);
                auto it = level[k - 1].find(sub);
                if (it == level[k - 1].end())
                    throw VerificationError("order complex is missing a chain face");
                m.add(it->second, idx, i % 2 == 0 ? Int(1) : Int(-1));
            }
        }
        cc.boundary[k] = std::move(m);
    }
    ls.homology = homology(cc);
    return ls;
}

} // namespace tropjac
