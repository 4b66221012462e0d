#include "tropjac/linalg.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace tropjac {

Vec mat_vec(const Mat& m, const Vec& x) {
    Vec r(m.rows, Rat(0));
    for (int i = 0; i < m.rows; ++i) {
        Rat s = 0;
        for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    Mat r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

Mat transpose(const Mat& m) {
    Mat r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

Rat det(const Mat& m) {
    if (m.rows != m.cols) throw VerificationError("det of non-square matrix");
    Mat w = m;
    int n = m.rows;
    Rat d = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (w.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(col, j));
            d = -d;
        }
        d *= w.at(col, col);
        Rat inv = Rat(1) / w.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (w.at(i, col) == 0) continue;
            Rat f = w.at(i, col) * inv;
            for (int j = col; j < n; ++j) w.at(i, j) -= f * w.at(col, j);
        }
    }
    return d;
}

Mat rref(const Mat& m, std::vector<int>* pivot_cols) {
    Mat w = m;
    if (pivot_cols) pivot_cols->clear();
    int r = 0;
    for (int col = 0; col < w.cols && r < w.rows; ++col) {
        int piv = -1;
        for (int i = r; i < w.rows; ++i)
            if (w.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(r, j));
        Rat inv = Rat(1) / w.at(r, col);
        for (int j = 0; j < w.cols; ++j) w.at(r, j) *= inv;
        for (int i = 0; i < w.rows; ++i) {
            if (i == r || w.at(i, col) == 0) continue;
            Rat f = w.at(i, col);
            for (int j = 0; j < w.cols; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++r;
    }
    return w;
}

int rank(const Mat& m) {
    std::vector<int> piv;
    rref(m, &piv);
    return static_cast<int>(piv.size());
}

Vec solve_square(const Mat& a, const Vec& b) {
    if (a.rows != a.cols || static_cast<int>(b.size()) != a.rows)
        throw VerificationError("solve_square shape mismatch");
    Mat aug(a.rows, a.cols + 1);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols) = b[i];
    }
    std::vector<int> piv;
    Mat r = rref(aug, &piv);
    if (static_cast<int>(piv.size()) != a.rows || (!piv.empty() && piv.back() == a.cols))
        throw VerificationError("singular system");
    Vec x(a.cols);
    for (int i = 0; i < a.rows; ++i) x[piv[i]] = r.at(i, a.cols);
    return x;
}

Mat inverse(const Mat& m) {
    if (m.rows != m.cols) throw VerificationError("inverse of non-square matrix");
    int n = m.rows;
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<int> piv;
    Mat r = rref(aug, &piv);
    if (static_cast<int>(piv.size()) != n || piv.back() >= n)
        throw VerificationError("singular matrix");
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = r.at(i, n + j);
    return inv;
}

std::vector<Vec> nullspace(const Mat& a) {
    std::vector<int> piv;
    Mat r = rref(a, &piv);
    std::vector<bool> is_piv(a.cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < a.cols; ++free) {
        if (is_piv[free]) continue;
        Vec v(a.cols, Rat(0));
        v[free] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r.at(static_cast<int>(i), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve_any(const Mat& a, const Vec& b) {
    Mat aug(a.rows, a.cols + 1);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols) = b[i];
    }
    std::vector<int> piv;
    Mat r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == a.cols) return std::nullopt;
    Vec x(a.cols, Rat(0));
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r.at(static_cast<int>(i), a.cols);
    return x;
}

std::vector<int> greedy_independent(const std::vector<Vec>& vecs) {
    std::vector<int> chosen;
    std::vector<Vec> rows; // maintained in row-echelon form
    for (size_t idx = 0; idx < vecs.size(); ++idx) {
        Vec v = vecs[idx];
        for (const Vec& r : rows) {
            int lead = -1;
            for (size_t j = 0; j < r.size(); ++j)
                if (r[j] != 0) { lead = static_cast<int>(j); break; }
            if (lead >= 0 && v[lead] != 0) {
                Rat f = v[lead] / r[lead];
                for (size_t j = 0; j < v.size(); ++j) v[j] -= f * r[j];
            }
        }
        if (!vec_is_zero(v)) {
            chosen.push_back(static_cast<int>(idx));
            rows.push_back(std::move(v));
        }
    }
    return chosen;
}

int affine_rank(const std::vector<Vec>& points) {
    if (points.empty()) return -1;
    std::vector<Vec> diffs;
    for (size_t i = 1; i < points.size(); ++i) diffs.push_back(vec_sub(points[i], points[0]));
    return static_cast<int>(greedy_independent(diffs).size());
}

Vec coords_in_rows(const std::vector<Vec>& basis, const Vec& r) {
    int k = static_cast<int>(basis.size());
    int n = static_cast<int>(r.size());
    Mat a(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) a.at(i, j) = basis[j][i];
    auto x = solve_any(a, r);
    if (!x) throw VerificationError("vector outside row span");
    return *x;
}

IVec primitive_integer(const Vec& v) {
    Int l = 1;
    for (const Rat& x : v) l = boost::multiprecision::lcm(l, rat_den(x));
    IVec w(v.size());
    Int g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        w[i] = rat_num(v[i]) * (l / rat_den(v[i]));
        g = boost::multiprecision::gcd(g, w[i]);
    }
    if (g == 0) return w; // zero vector
    int sign = 0;
    for (const Int& x : w)
        if (x != 0) { sign = x > 0 ? 1 : -1; break; }
    if (sign < 0) g = -g;
    for (Int& x : w) x /= g;
    return w;
}

std::vector<Vec> perp_basis(const std::vector<Vec>& dirs, int n) {
    Mat a(static_cast<int>(dirs.size()), n);
    for (size_t i = 0; i < dirs.size(); ++i)
        for (int j = 0; j < n; ++j) a.at(static_cast<int>(i), j) = dirs[i][j];
    return nullspace(a);
}

} // namespace tropjac
