// Integer matrix normal forms for homology: sparse rank and invariant
// factors, plus a dense kernel-basis routine for small matrices.
#pragma once

#include <map>
#include <vector>

#include "tropjac/rational.hpp"

namespace tropjac {

struct SparseIntMat {
    long rows = 0, cols = 0;
    std::vector<std::map<long, Int>> row; // row[i]: col -> nonzero value

    SparseIntMat() = default;
    SparseIntMat(long r, long c) : rows(r), cols(c), row(static_cast<size_t>(r)) {}

    void add(long i, long j, const Int& v) {
        if (v == 0) return;
        auto it = row[i].find(j);
        if (it == row[i].end()) {
            row[i][j] = v;
        } else {
            it->second += v;
            if (it->second == 0) row[i].erase(it);
        }
    }
    void set(long i, long j, const Int& v) {
        if (v == 0)
            row[i].erase(j);
        else
            row[i][j] = v;
    }
    long nnz() const {
        long n = 0;
        for (const auto& r : row) n += static_cast<long>(r.size());
        return n;
    }
};

struct SnfResult {
    long rank = 0;
    std::vector<Int> invariant_factors; // positive, divisibility chain, rank entries

    std::vector<Int> torsion() const {
        std::vector<Int> t;
        for (const Int& f : invariant_factors)
            if (f >= 2) t.push_back(f);
        return t;
    }
};

/** Invariant factors by unimodular elimination: unit pivots chosen by a
 *  Markowitz fill score while they last, then classical Smith reduction on
 *  the dense residue. */
SnfResult smith_normal_form(SparseIntMat m);

inline long sparse_rank(SparseIntMat m) { return smith_normal_form(std::move(m)).rank; }

/** Invariant factors of a dense integer matrix (classical reduction). */
std::vector<Int> dense_snf(std::vector<IVec> m);

/** Z-basis of {x : A x = 0} for a dense integer matrix, via unimodular
 *  column elimination. Intended for small matrices. */
std::vector<IVec> integer_kernel(const std::vector<IVec>& a, long n_cols);

} // namespace tropjac
