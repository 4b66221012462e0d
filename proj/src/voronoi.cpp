#include "tropjac/voronoi.hpp"

#include <algorithm>

#include "tropjac/parallel.hpp"

namespace tropjac {

namespace {

struct CosetBest {
    bool found = false;
    Int best = 0;
    std::vector<IVec> argmins;
};

struct ScaledForm {
    int b = 0;
    std::vector<IVec> g; // integer-scaled Gram matrix (positive multiple of G)
    Int bound = 0;       // scaled search bound 4 b max(G_ii)
};

ScaledForm scale_form(const Mat& gram) {
    ScaledForm f;
    f.b = gram.rows;
    Int l = 1;
    for (const Rat& x : gram.a) l = boost::multiprecision::lcm(l, rat_den(x));
    f.g.assign(f.b, IVec(f.b));
    Int maxdiag = 0;
    for (int i = 0; i < f.b; ++i) {
        for (int j = 0; j < f.b; ++j)
            f.g[i][j] = rat_num(gram.at(i, j)) * (l / rat_den(gram.at(i, j)));
        if (f.g[i][i] <= 0) throw InvalidInput("form is not positive definite");
        maxdiag = std::max(maxdiag, f.g[i][i]);
    }
    f.bound = Int(4) * f.b * maxdiag;
    return f;
}

Int eval_form(const ScaledForm& f, const IVec& x) {
    Int q = 0;
    for (int i = 0; i < f.b; ++i) {
        if (x[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < f.b; ++j) row += f.g[i][j] * x[j];
        q += x[i] * row;
    }
    return q;
}

/** Componentwise box radii M_i with {Q <= bound} inside prod [-M_i, M_i]:
 *  max of x_i over the ellipsoid is sqrt(bound * (G^{-1})_ii). */
std::vector<long> box_radii(const Mat& gram) {
    int b = gram.rows;
    Rat maxdiag = 0;
    for (int i = 0; i < b; ++i) maxdiag = std::max(maxdiag, gram.at(i, i));
    Rat bound = Rat(4 * b) * maxdiag;
    Mat inv = inverse(gram);
    std::vector<long> m(b);
    for (int i = 0; i < b; ++i) {
        Int cap = rat_floor(bound * inv.at(i, i));
        m[i] = static_cast<long>(boost::multiprecision::sqrt(cap)) + 1;
    }
    return m;
}

int coset_index(const IVec& x) {
    int c = 0;
    for (size_t i = 0; i < x.size(); ++i)
        if ((x[i] % 2) != 0) c |= 1 << i;
    return c;
}

void scan_point(const ScaledForm& f, const IVec& x, std::vector<CosetBest>& table) {
    int c = coset_index(x);
    if (c == 0) return; // the even coset is minimized by 0 alone
    Int q = eval_form(f, x);
    if (q > f.bound) return;
    CosetBest& slot = table[c];
    if (!slot.found || q < slot.best) {
        slot.found = true;
        slot.best = q;
        slot.argmins = {x};
    } else if (q == slot.best) {
        slot.argmins.push_back(x);
    }
}

/** Enumerates the sub-box over coordinates from..b-1 with prefix fixed. */
void scan_tail(const ScaledForm& f, const std::vector<long>& radii, IVec& x, int from,
               std::vector<CosetBest>& table) {
    if (from == f.b) {
        scan_point(f, x, table);
        return;
    }
    for (long v = -radii[from]; v <= radii[from]; ++v) {
        x[from] = v;
        scan_tail(f, radii, x, from + 1, table);
    }
}

void merge_tables(std::vector<CosetBest>& into, const std::vector<CosetBest>& from) {
    for (size_t c = 0; c < into.size(); ++c) {
        const CosetBest& src = from[c];
        if (!src.found) continue;
        CosetBest& dst = into[c];
        if (!dst.found || src.best < dst.best) {
            dst = src;
        } else if (src.best == dst.best) {
            dst.argmins.insert(dst.argmins.end(), src.argmins.begin(), src.argmins.end());
        }
    }
}

std::vector<IVec> extract_relevant(const std::vector<CosetBest>& table) {
    std::vector<IVec> out;
    for (const CosetBest& slot : table) {
        if (!slot.found || slot.argmins.size() != 2) continue;
        IVec neg = slot.argmins[1];
        for (Int& v : neg) v = -v;
        if (neg != slot.argmins[0]) continue; // tie that is not a +/- pair
        out.push_back(slot.argmins[0]);
        out.push_back(slot.argmins[1]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void check_guard(const Mat& gram, const Guards& guards) {
    if (gram.rows != gram.cols || gram.rows < 1) throw InvalidInput("gram matrix must be square");
    if (gram.rows > guards.max_b_voronoi)
        throw GuardExceeded("voronoi dimension " + std::to_string(gram.rows) + " exceeds guard " +
                            std::to_string(guards.max_b_voronoi));
    for (int i = 0; i < gram.rows; ++i)
        for (int j = i + 1; j < gram.cols; ++j)
            if (gram.at(i, j) != gram.at(j, i)) throw InvalidInput("gram matrix is not symmetric");
    // Sylvester criterion; exact and cheap at the guarded sizes.
    for (int k = 1; k <= gram.rows; ++k) {
        Mat lead(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) lead.at(i, j) = gram.at(i, j);
        if (det(lead) <= 0) throw InvalidInput("form is not positive definite");
    }
}

} // namespace

std::vector<IVec> relevant_vectors_serial(const Mat& gram, const Guards& guards) {
    check_guard(gram, guards);
    ScaledForm f = scale_form(gram);
    std::vector<long> radii = box_radii(gram);
    std::vector<CosetBest> table(size_t(1) << f.b);
    IVec x(f.b, Int(0));
    scan_tail(f, radii, x, 0, table);
    return extract_relevant(table);
}

std::vector<IVec> relevant_vectors(const Mat& gram, const Guards& guards) {
    check_guard(gram, guards);
    ScaledForm f = scale_form(gram);
    std::vector<long> radii = box_radii(gram);
    long slabs = 2 * radii[0] + 1;
    std::vector<std::vector<CosetBest>> per_slab(slabs);
    parallel_for(slabs, [&](long s) {
        std::vector<CosetBest> table(size_t(1) << f.b);
        IVec x(f.b, Int(0));
        x[0] = -radii[0] + s;
        scan_tail(f, radii, x, 1, table);
        per_slab[s] = std::move(table);
    });
    std::vector<CosetBest> table(size_t(1) << f.b);
    for (long s = 0; s < slabs; ++s) merge_tables(table, per_slab[s]);
    return extract_relevant(table);
}

VoronoiCell voronoi_cell(const Mat& gram, const Guards& guards) {
    VoronoiCell cell;
    cell.b = gram.rows;
    cell.relevant = relevant_vectors(gram, guards);
    if (cell.relevant.empty()) throw VerificationError("no relevant vectors found");

    std::vector<Hyperplane> facets;
    for (const IVec& lam : cell.relevant) {
        Vec lam_q = ivec_to_vec(lam);
        Vec n = mat_vec(gram, lam_q); // bisector of 0 and lam under the form
        facets.push_back(make_halfspace(n, vec_dot(n, lam_q) / 2));
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

    Polytope& p = cell.poly;
    p.ambient = cell.b;
    p.dim = cell.b;
    p.vertices = vertices_from_hrep(cell.b, {}, facets);
    if (p.vertices.empty()) throw VerificationError("voronoi cell has no vertices");
    for (int i = 0; i < cell.b; ++i) {
        Vec e(cell.b, Rat(0));
        e[i] = 1;
        p.basis.push_back(std::move(e));
    }
    p.facets = std::move(facets);
    cell.faces = face_lattice(p);
    return cell;
}

} // namespace tropjac
