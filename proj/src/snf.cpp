#include "tropjac/snf.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

#include "tropjac/error.hpp"

namespace tropjac {

namespace {

Int int_abs(const Int& v) { return v < 0 ? Int(-v) : v; }

/** Extended gcd: returns g >= 0 with p*a + q*b = g. */
Int xgcd(Int a, Int b, Int& p, Int& q) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int quo = old_r / r;
        Int tmp = old_r - quo * r; old_r = r; r = tmp;
        tmp = old_s - quo * s; old_s = s; s = tmp;
        tmp = old_t - quo * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    p = old_s;
    q = old_t;
    return old_r;
}

} // namespace

std::vector<Int> dense_snf(std::vector<IVec> m) {
    std::vector<Int> factors;
    size_t nr = m.size();
    size_t nc = nr ? m[0].size() : 0;
    size_t t = 0;
    while (t < nr && t < nc) {
        size_t pi = nr, pj = nc;
        Int best = 0;
        for (size_t i = t; i < nr; ++i)
            for (size_t j = t; j < nc; ++j)
                if (m[i][j] != 0 && (pi == nr || int_abs(m[i][j]) < best)) {
                    pi = i; pj = j; best = int_abs(m[i][j]);
                }
        if (pi == nr) break;
        std::swap(m[t], m[pi]);
        if (pj != t)
            for (size_t i = 0; i < nr; ++i) std::swap(m[i][t], m[i][pj]);

        bool again = true;
        while (again) {
            again = false;
            for (size_t i = t + 1; i < nr && !again; ++i) {
                if (m[i][t] == 0) continue;
                Int q = m[i][t] / m[t][t];
                for (size_t j = t; j < nc; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) { std::swap(m[t], m[i]); again = true; }
            }
            if (again) continue;
            for (size_t j = t + 1; j < nc && !again; ++j) {
                if (m[t][j] == 0) continue;
                Int q = m[t][j] / m[t][t];
                for (size_t i = t; i < nr; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (size_t i = 0; i < nr; ++i) std::swap(m[i][t], m[i][j]);
                    again = true;
                }
            }
            if (again) continue;
            // pivot must divide the rest of the block for the divisibility chain
            for (size_t i = t + 1; i < nr && !again; ++i)
                for (size_t j = t + 1; j < nc && !again; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (size_t jj = t; jj < nc; ++jj) m[t][jj] += m[i][jj];
                        again = true;
                    }
        }
        factors.push_back(int_abs(m[t][t]));
        ++t;
    }
    return factors;
}

SnfResult smith_normal_form(SparseIntMat m) {
    std::vector<std::set<long>> colrows(m.cols);
    for (long i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : m.row[i]) colrows[j].insert(i);
    std::vector<char> row_alive(m.rows, 1), col_alive(m.cols, 1);
    long unit_pivots = 0;

    // Unit pivots in fill-score order. Entries go stale as elimination
    // progresses, so each pop is re-validated and re-scored; the (score,
    // row, col) order keeps pivot choice deterministic.
    using Cand = std::tuple<long, long, long>;
    std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;
    auto score_of = [&](long i, long j) {
        return (static_cast<long>(m.row[i].size()) - 1) *
               (static_cast<long>(colrows[j].size()) - 1);
    };
    for (long i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : m.row[i])
            if (v == 1 || v == -1) heap.push({score_of(i, j), i, j});

    while (!heap.empty()) {
        auto [sc, bi, bj] = heap.top();
        heap.pop();
        if (!row_alive[bi] || !col_alive[bj]) continue;
        auto pit = m.row[bi].find(bj);
        if (pit == m.row[bi].end() || (pit->second != 1 && pit->second != -1)) continue;
        long cur = score_of(bi, bj);
        if (cur > sc) {
            heap.push({cur, bi, bj});
            continue;
        }

        Int pivot = pit->second;
        std::vector<long> other_rows(colrows[bj].begin(), colrows[bj].end());
        for (long k : other_rows) {
            if (k == bi) continue;
            Int factor = m.row[k][bj] * pivot; // a_kj / pivot since pivot = +-1
            for (const auto& [j, v] : m.row[bi]) {
                auto it = m.row[k].find(j);
                if (it == m.row[k].end()) {
                    Int nv = -factor * v;
                    if (nv == 1 || nv == -1) heap.push({score_of(k, j), k, j});
                    m.row[k][j] = std::move(nv);
                    colrows[j].insert(k);
                } else {
                    it->second -= factor * v;
                    if (it->second == 0) {
                        m.row[k].erase(it);
                        colrows[j].erase(k);
                    } else if (it->second == 1 || it->second == -1) {
                        heap.push({score_of(k, j), k, j});
                    }
                }
            }
        }
        // retire pivot row and column; the residual keeps the other factors
        for (const auto& [j, v] : m.row[bi]) colrows[j].erase(bi);
        m.row[bi].clear();
        row_alive[bi] = 0;
        col_alive[bj] = 0;
        ++unit_pivots;
    }

    // compact the residue into a dense block
    std::vector<long> rmap, cmap(m.cols, -1);
    long nc = 0;
    for (long j = 0; j < m.cols; ++j)
        if (col_alive[j] && !colrows[j].empty()) cmap[j] = nc++;
    std::vector<IVec> dense;
    for (long i = 0; i < m.rows; ++i) {
        if (!row_alive[i] || m.row[i].empty()) continue;
        IVec r(nc, Int(0));
        for (const auto& [j, v] : m.row[i]) r[cmap[j]] = v;
        dense.push_back(std::move(r));
    }
    if (static_cast<long>(dense.size()) > 5000 || nc > 5000)
        throw VerificationError("snf dense residue too large");

    SnfResult res;
    res.invariant_factors.assign(unit_pivots, Int(1));
    for (Int& f : dense_snf(std::move(dense))) res.invariant_factors.push_back(std::move(f));
    res.rank = static_cast<long>(res.invariant_factors.size());
    return res;
}

std::vector<IVec> integer_kernel(const std::vector<IVec>& a_in, long n_cols) {
    std::vector<IVec> a = a_in;
    std::vector<IVec> v(n_cols, IVec(n_cols, Int(0)));
    for (long j = 0; j < n_cols; ++j) v[j][j] = 1; // v[j] is column j of the transform
    long r = 0;
    auto col_combine = [&](long c0, long c1, const Int& p, const Int& q, const Int& u,
                           const Int& w) {
        // (col c0, col c1) <- (p c0 + q c1, -w c0 + u c1), unimodular since pu + qw = 1
        for (auto& row : a) {
            Int x = row[c0], y = row[c1];
            row[c0] = p * x + q * y;
            row[c1] = -w * x + u * y;
        }
        IVec x = v[c0], y = v[c1];
        for (long i = 0; i < n_cols; ++i) {
            v[c0][i] = p * x[i] + q * y[i];
            v[c1][i] = -w * x[i] + u * y[i];
        }
    };
    for (size_t i = 0; i < a.size() && r < n_cols; ++i) {
        long c0 = -1;
        for (long j = r; j < n_cols; ++j)
            if (a[i][j] != 0) { c0 = j; break; }
        if (c0 < 0) continue;
        for (long j = c0 + 1; j < n_cols; ++j) {
            if (a[i][j] == 0) continue;
            Int p, q;
            Int g = xgcd(a[i][c0], a[i][j], p, q);
            col_combine(c0, j, p, q, a[i][c0] / g, a[i][j] / g);
        }
        if (c0 != r) {
            for (auto& row : a) std::swap(row[c0], row[r]);
            std::swap(v[c0], v[r]);
        }
        ++r;
    }
    std::vector<IVec> kernel;
    for (long j = r; j < n_cols; ++j) kernel.push_back(v[j]);
    return kernel;
}

} // namespace tropjac
