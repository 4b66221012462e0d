// Dense exact-rational linear algebra for small systems.
// Pivoting is deterministic (first nonzero), so reduced forms are canonical.
#pragma once

#include <optional>
#include <vector>

#include "tropjac/rational.hpp"

namespace tropjac {

struct Mat {
    int rows = 0, cols = 0;
    std::vector<Rat> a; // row-major

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static Mat from_rows(const std::vector<Vec>& rows_in) {
        Mat m(static_cast<int>(rows_in.size()), rows_in.empty() ? 0 : static_cast<int>(rows_in[0].size()));
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows_in[i][j];
        return m;
    }
    Vec row(int i) const {
        Vec r(cols);
        for (int j = 0; j < cols; ++j) r[j] = at(i, j);
        return r;
    }
    Vec col(int j) const {
        Vec c(rows);
        for (int i = 0; i < rows; ++i) c[i] = at(i, j);
        return c;
    }
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Vec mat_vec(const Mat& m, const Vec& x);
Mat mat_mul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);

Rat det(const Mat& m);
int rank(const Mat& m);

/** Solves the square system A x = b; throws VerificationError when singular. */
Vec solve_square(const Mat& a, const Vec& b);
Mat inverse(const Mat& m);

/** Reduced row echelon form; returns pivot column indices. Canonical. */
Mat rref(const Mat& m, std::vector<int>* pivot_cols = nullptr);

/** Canonical basis of {x : A x = 0} read off the RREF free columns. */
std::vector<Vec> nullspace(const Mat& a);

/** One solution of A x = b (possibly underdetermined); nullopt when inconsistent. */
std::optional<Vec> solve_any(const Mat& a, const Vec& b);

/** Indices, in input order, of a greedy maximal linearly independent subset. */
std::vector<int> greedy_independent(const std::vector<Vec>& vecs);

/** Affine rank of a point set (dimension of affine hull). */
int affine_rank(const std::vector<Vec>& points);

/** Coordinates of r in the row basis (solves sum_j x_j basis[j] = r); throws if r
 *  is outside the span. */
Vec coords_in_rows(const std::vector<Vec>& basis, const Vec& r);

/** Scales a rational vector to a primitive integer vector with first nonzero > 0. */
IVec primitive_integer(const Vec& v);

/** Canonical rational basis of the orthogonal complement of span(dirs) in Q^n. */
std::vector<Vec> perp_basis(const std::vector<Vec>& dirs, int n);

inline Vec ivec_to_vec(const IVec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

} // namespace tropjac
