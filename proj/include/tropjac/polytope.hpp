// Exact convex polytopes of any dimension inside Q^n, with face lattices.
// Sizes here are tiny (b <= 4, handfuls of vertices), so hull and vertex
// enumeration are deterministic brute force over exact rationals.
#pragma once

#include <string>
#include <vector>

#include "tropjac/linalg.hpp"
#include "tropjac/rational.hpp"

namespace tropjac {

/** Oriented hyperplane n.x (cmp) c with primitive integer normal. */
struct Hyperplane {
    IVec normal;
    Rat offset;

    bool operator==(const Hyperplane& o) const { return normal == o.normal && offset == o.offset; }
    bool operator<(const Hyperplane& o) const {
        if (normal != o.normal) return normal < o.normal;
        return offset < o.offset;
    }
};

Rat hyperplane_eval(const Hyperplane& h, const Vec& x); // n.x - c

/** Normalizes a rational halfspace n.x <= c to a primitive integer normal,
 *  scaling by a positive rational only (inequality sense preserved). */
Hyperplane make_halfspace(const Vec& normal, const Rat& offset);

struct Polytope {
    int ambient = 0;
    int dim = -1;                    // -1 means empty
    std::vector<Vec> vertices;       // extreme points, lex sorted
    std::vector<Vec> basis;          // dim direction vectors spanning the hull
    std::vector<Hyperplane> aff_eqs; // equalities cutting out the affine hull (canonical)
    std::vector<Hyperplane> facets;  // n.x <= offset, facet-defining within the hull

    bool empty() const { return dim < 0; }
    const Vec& base() const { return vertices.front(); }
    Vec centroid() const;
};

/** Convex hull of a finite point set. */
Polytope polytope_from_points(int ambient, std::vector<Vec> pts);

/** Vertices of {x : eqs tight, n.x <= c for ineqs} by basis-subset enumeration. */
std::vector<Vec> vertices_from_hrep(int ambient, const std::vector<Hyperplane>& eqs,
                                    const std::vector<Hyperplane>& ineqs);

bool polytope_contains(const Polytope& p, const Vec& x);
Polytope translate(const Polytope& p, const Vec& t);

/** All faces grouped by dimension 0..dim; each face is a sorted vertex-index list.
 *  faces[dim] has a single entry (the polytope itself). */
std::vector<std::vector<std::vector<int>>> face_lattice(const Polytope& p);

/** Fan triangulation (apex = first vertex); simplices as vertex-index tuples. */
std::vector<std::vector<int>> triangulate_fan(const Polytope& p);

/** Closed pieces of p on each side of the hyperplane (first: n.x <= c);
 *  a piece is empty when p lies strictly on the other side. */
std::pair<Polytope, Polytope> split_polytope(const Polytope& p, const Hyperplane& h);

/** Canonical identity key: the sorted exact vertex list. */
std::string polytope_key(const Polytope& p);

} // namespace tropjac
