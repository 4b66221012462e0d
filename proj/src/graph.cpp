#include "tropjac/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "tropjac/error.hpp"

namespace tropjac {

int MetricGraph::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    return -1;
}

int MetricGraph::edge_index(const std::string& id) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return static_cast<int>(i);
    return -1;
}

int MetricGraph::degree(int v) const {
    int d = 0;
    for (const Edge& e : edges) {
        if (e.tail == v) ++d;
        if (e.head == v) ++d;
    }
    return d;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

} // namespace

MetricGraph normalize(const MetricGraph& g) {
    if (g.vertices.empty()) throw InvalidInput("graph has no vertices");
    {
        std::set<std::string> names(g.vertices.begin(), g.vertices.end());
        if (names.size() != g.vertices.size()) throw InvalidInput("duplicate vertex names");
        std::set<std::string> ids;
        for (const Edge& e : g.edges)
            if (!ids.insert(e.id).second) throw InvalidInput("duplicate edge id: " + e.id);
    }
    int n = static_cast<int>(g.vertices.size());
    for (const Edge& e : g.edges) {
        if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n)
            throw InvalidInput("edge endpoint out of range: " + e.id);
        if (e.length <= 0) throw InvalidInput("non-positive edge length: " + e.id);
    }
    if (g.basepoint < 0 || g.basepoint >= n) throw InvalidInput("basepoint out of range");

    MetricGraph out;
    out.vertices = g.vertices;
    out.basepoint = g.basepoint;
    for (const Edge& e : g.edges) {
        if (e.tail == e.head) {
            int mid = static_cast<int>(out.vertices.size());
            out.vertices.push_back(e.id + "__mid");
            out.edges.push_back({e.id + "__a", e.tail, mid, e.length / 2});
            out.edges.push_back({e.id + "__b", mid, e.head, e.length / 2});
        } else {
            out.edges.push_back(e);
        }
    }

    UnionFind uf(static_cast<int>(out.vertices.size()));
    for (const Edge& e : out.edges) uf.unite(e.tail, e.head);
    int root = uf.find(0);
    for (size_t v = 1; v < out.vertices.size(); ++v)
        if (uf.find(static_cast<int>(v)) != root) throw InvalidInput("graph is not connected");
    return out;
}

int genus(const MetricGraph& g) {
    return static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) + 1;
}

GraphPoint make_point(const MetricGraph& g, int edge, const Rat& offset) {
    const Edge& e = g.edges.at(edge);
    if (offset < 0 || offset > e.length) throw InvalidInput("point offset outside edge " + e.id);
    GraphPoint p;
    if (offset == 0) {
        p.vertex = e.tail;
    } else if (offset == e.length) {
        p.vertex = e.head;
    } else {
        p.edge = edge;
        p.offset = offset;
    }
    return p;
}

GraphPoint locate_point(const MetricGraph& g, const std::string& edge_id, const Rat& offset) {
    int e = g.edge_index(edge_id);
    if (e >= 0) return make_point(g, e, offset);
    // Original loop id: route onto the subdivided halves.
    int ea = g.edge_index(edge_id + "__a");
    int eb = g.edge_index(edge_id + "__b");
    if (ea < 0 || eb < 0) throw InvalidInput("unknown edge id: " + edge_id);
    const Rat& half = g.edges[ea].length;
    if (offset < 0 || offset > 2 * half) throw InvalidInput("point offset outside edge " + edge_id);
    if (offset <= half) return make_point(g, ea, offset);
    return make_point(g, eb, offset - half);
}

JacobianData jacobian_data(const MetricGraph& g_raw) {
    JacobianData jd;
    jd.graph = normalize(g_raw);
    const MetricGraph& g = jd.graph;
    int V = static_cast<int>(g.vertices.size());
    int E = static_cast<int>(g.edges.size());
    jd.b = genus(g);
    if (jd.b < 1) throw InvalidInput("graph is a tree (genus 0), Jacobian is trivial");

    UnionFind uf(V);
    std::vector<char> in_tree(E, 0);
    for (int e = 0; e < E; ++e) {
        if (uf.unite(g.edges[e].tail, g.edges[e].head)) {
            in_tree[e] = 1;
            jd.tree_edges.push_back(e);
        } else {
            jd.nontree_edges.push_back(e);
        }
    }

    // Root the tree at the basepoint; parent pointers give canonical tree paths.
    std::vector<int> parent(V, -1), parent_edge(V, -1), depth(V, 0), order;
    std::vector<char> seen(V, 0);
    order.push_back(g.basepoint);
    seen[g.basepoint] = 1;
    for (size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (int e = 0; e < E; ++e) {
            if (!in_tree[e]) continue;
            int other = -1;
            if (g.edges[e].tail == v) other = g.edges[e].head;
            else if (g.edges[e].head == v) other = g.edges[e].tail;
            if (other < 0 || seen[other]) continue;
            seen[other] = 1;
            parent[other] = v;
            parent_edge[other] = e;
            depth[other] = depth[v] + 1;
            order.push_back(other);
        }
    }

    // chain += sign * (path from a up to b), b an ancestor of a
    auto add_walk_up = [&](IVec& chain, int a, int b, int sgn) {
        while (a != b) {
            int e = parent_edge[a];
            int step = (g.edges[e].head == parent[a]) ? 1 : -1; // a -> parent(a)
            chain[e] += sgn * step;
            a = parent[a];
        }
    };
    auto tree_path_chain = [&](int from, int to) {
        IVec chain(E, Int(0));
        int a = from, bb = to;
        while (depth[a] > depth[bb]) a = parent[a];
        while (depth[bb] > depth[a]) bb = parent[bb];
        while (a != bb) { a = parent[a]; bb = parent[bb]; }
        add_walk_up(chain, from, a, 1);
        add_walk_up(chain, to, a, -1);
        return chain;
    };

    for (int f : jd.nontree_edges) {
        IVec chain = tree_path_chain(g.edges[f].head, g.edges[f].tail);
        chain[f] += 1;
        jd.cycles.push_back(std::move(chain));
    }

    jd.gram = Mat(jd.b, jd.b);
    for (int i = 0; i < jd.b; ++i)
        for (int j = 0; j < jd.b; ++j) {
            Rat s = 0;
            for (int e = 0; e < E; ++e)
                if (jd.cycles[i][e] != 0 && jd.cycles[j][e] != 0)
                    s += Rat(jd.cycles[i][e] * jd.cycles[j][e]) * g.edges[e].length;
            jd.gram.at(i, j) = s;
        }
    // Positive definiteness: leading principal minors are positive.
    for (int k = 1; k <= jd.b; ++k) {
        Mat mk(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) mk.at(i, j) = jd.gram.at(i, j);
        if (det(mk) <= 0) throw VerificationError("Gram matrix is not positive definite");
    }
    jd.gram_inv = inverse(jd.gram);

    jd.velocity.resize(E);
    for (int e = 0; e < E; ++e) {
        Vec a(jd.b);
        for (int i = 0; i < jd.b; ++i) a[i] = Rat(jd.cycles[i][e]);
        jd.velocity[e] = mat_vec(jd.gram_inv, a);
    }

    jd.mu_vertex.resize(V, Vec(jd.b, Rat(0)));
    for (int v = 0; v < V; ++v) {
        IVec chain = tree_path_chain(g.basepoint, v);
        Vec pairing(jd.b, Rat(0));
        for (int i = 0; i < jd.b; ++i) {
            Rat s = 0;
            for (int e = 0; e < E; ++e)
                if (chain[e] != 0 && jd.cycles[i][e] != 0)
                    s += Rat(chain[e] * jd.cycles[i][e]) * g.edges[e].length;
            pairing[i] = s;
        }
        jd.mu_vertex[v] = mat_vec(jd.gram_inv, pairing);
    }
    return jd;
}

Vec abel_jacobi_point(const JacobianData& jd, const GraphPoint& p) {
    if (p.is_vertex()) return jd.mu_vertex.at(p.vertex);
    const Edge& e = jd.graph.edges.at(p.edge);
    return vec_add(jd.mu_vertex[e.tail], vec_scale(jd.velocity[p.edge], p.offset));
}

Vec aj_of_weighted_chain(const JacobianData& jd, const Vec& edge_weights) {
    int E = static_cast<int>(jd.graph.edges.size());
    Vec pairing(jd.b, Rat(0));
    for (int i = 0; i < jd.b; ++i) {
        Rat s = 0;
        for (int e = 0; e < E; ++e)
            if (edge_weights[e] != 0 && jd.cycles[i][e] != 0)
                s += edge_weights[e] * Rat(jd.cycles[i][e]) * jd.graph.edges[e].length;
        pairing[i] = s;
    }
    return mat_vec(jd.gram_inv, pairing);
}

} // namespace tropjac
