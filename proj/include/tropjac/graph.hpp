// Metric graphs, points on them, and the tropical Abel-Jacobi data
// (cycle basis, Gram matrix, edge velocities, vertex images).
#pragma once

#include <string>
#include <vector>

#include "tropjac/linalg.hpp"
#include "tropjac/rational.hpp"

namespace tropjac {

struct Edge {
    std::string id;
    int tail = 0, head = 0;
    Rat length;
};

struct MetricGraph {
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    int basepoint = 0;

    int vertex_index(const std::string& name) const;
    int edge_index(const std::string& id) const;
    int degree(int v) const;
};

/** Checks well-formedness (unique names, valid endpoints, positive lengths,
 *  connectedness) and subdivides every loop once at its midpoint. Loop "x"
 *  becomes "x__a", "x__b" around new vertex "x__mid". */
MetricGraph normalize(const MetricGraph& g);

int genus(const MetricGraph& g);

/** A point of the metric graph: either a vertex or an interior edge point. */
struct GraphPoint {
    int vertex = -1; // >= 0 iff vertex point
    int edge = -1;
    Rat offset; // distance from the tail, 0 < offset < length for interior points

    bool is_vertex() const { return vertex >= 0; }
    bool operator==(const GraphPoint& o) const {
        return vertex == o.vertex && edge == o.edge && offset == o.offset;
    }
    bool operator<(const GraphPoint& o) const {
        if (is_vertex() != o.is_vertex()) return is_vertex();
        if (is_vertex()) return vertex < o.vertex;
        if (edge != o.edge) return edge < o.edge;
        return offset < o.offset;
    }
};

/** Canonical point on edge e at the given offset in [0, length]; endpoint
 *  offsets collapse to vertex points. */
GraphPoint make_point(const MetricGraph& g, int edge, const Rat& offset);

/** Resolves an edge id that may refer to a loop subdivided by normalize(). */
GraphPoint locate_point(const MetricGraph& g, const std::string& edge_id, const Rat& offset);

struct JacobianData {
    MetricGraph graph; // normalized
    int b = 0;
    std::vector<int> tree_edges;
    std::vector<int> nontree_edges;
    std::vector<IVec> cycles; // b chains over edges, +1 on the defining non-tree edge
    Mat gram;                 // G_ij = sum_e a_e^i a_e^j len(e), positive definite
    Mat gram_inv;
    std::vector<Vec> velocity;  // per edge: w_e = G^{-1} a_e
    std::vector<Vec> mu_vertex; // per vertex: image under the Abel-Jacobi map, basepoint at 0
    std::string convention = "lex-tree-v1";
};

/** Builds the Jacobian data from the lexicographically-first spanning tree.
 *  Cycles are the fundamental cycles of that tree ordered by non-tree edge
 *  index. Throws InvalidInput for trees (genus 0). */
JacobianData jacobian_data(const MetricGraph& g_raw);

/** Representative of the Abel-Jacobi image in Q^b (reduce mod Z^b for the torus). */
Vec abel_jacobi_point(const JacobianData& jd, const GraphPoint& p);

/** mu for a weighted 1-chain: weight_e = signed traversed fraction of edge e. */
Vec aj_of_weighted_chain(const JacobianData& jd, const Vec& edge_weights);

} // namespace tropjac
