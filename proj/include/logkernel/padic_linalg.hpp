#pragma once

#include "logkernel/padic.hpp"

#include <utility>
#include <vector>

namespace logkernel {

// Rectangular matrix over Z/ell^m at uniform precision.
class PMatrix {
public:
    PMatrix(long long ell, int prec, int rows, int cols)
        : ell_(ell), prec_(prec), rows_(rows), cols_(cols),
          modulus_(pow_int(ell, prec)), a_(size_t(rows) * cols, 0)
    {
        if (rows < 0 || cols < 0) throw invalid_input("PMatrix: bad shape");
    }

    long long ell() const { return ell_; }
    int prec() const { return prec_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Int& modulus() const { return modulus_; }

    const Int& raw(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
    void set(int i, int j, const Int& v) { a_[size_t(i) * cols_ + j] = mod_floor(v, modulus_); }
    void set(int i, int j, const PadicInt& v)
    {
        if (v.ell() != ell_ || v.prec() < prec_)
            throw invalid_input("PMatrix::set: precision/prime mismatch");
        set(i, j, v.value());
    }
    PadicInt at(int i, int j) const { return PadicInt(ell_, raw(i, j), prec_); }

    PMatrix reduced(int new_prec) const
    {
        PMatrix r(ell_, new_prec, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r.set(i, j, raw(i, j));
        return r;
    }

    static PMatrix identity(long long ell, int prec, int n)
    {
        PMatrix m(ell, prec, n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    friend PMatrix operator*(const PMatrix& x, const PMatrix& y)
    {
        if (x.cols_ != y.rows_ || x.ell_ != y.ell_)
            throw invalid_input("PMatrix: incompatible product");
        int p = std::min(x.prec_, y.prec_);
        PMatrix r(x.ell_, p, x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int j = 0; j < y.cols_; ++j) {
                Int s = 0;
                for (int k = 0; k < x.cols_; ++k) s += x.raw(i, k) * y.raw(k, j);
                r.set(i, j, s);
            }
        return r;
    }

private:
    long long ell_;
    int prec_;
    int rows_, cols_;
    Int modulus_;
    std::vector<Int> a_;
};

// U*M*V = diag(ell^a_i) mod ell^m.  Exponents are nondecreasing; an entry
// equal to prec means "unresolved at this precision" (>= m).
struct SnfResult {
    long long ell = 3;
    int prec = 0;
    std::vector<int> exponents;
    PMatrix U, V;

    SnfResult(long long e, int p, int rows, int cols)
        : ell(e), prec(p), U(PMatrix::identity(e, p, rows)), V(PMatrix::identity(e, p, cols))
    {
    }

    bool resolved(size_t i) const { return exponents[i] < prec; }
    bool all_resolved() const
    {
        for (size_t i = 0; i < exponents.size(); ++i)
            if (!resolved(i)) return false;
        return true;
    }
};

namespace detail {

inline int entry_valuation(const Int& x, long long ell, int prec)
{
    if (x == 0) return prec;
    return std::min(valuation(x, ell), prec);
}

} // namespace detail

// Deterministic SNF over Z/ell^m: pivots of minimal valuation, ties broken
// by smallest (row, col).
inline SnfResult smith_normal_form(const PMatrix& M)
{
    long long ell = M.ell();
    int prec = M.prec();
    int r = M.rows(), c = M.cols();
    const Int& mod = M.modulus();

    SnfResult res(ell, prec, r, c);
    PMatrix A = M;
    PMatrix& U = res.U;
    PMatrix& V = res.V;

    auto swap_rows = [&](PMatrix& X, int i, int j) {
        for (int k = 0; k < X.cols(); ++k) {
            Int t = X.raw(i, k);
            X.set(i, k, X.raw(j, k));
            X.set(j, k, t);
        }
    };
    auto swap_cols = [&](PMatrix& X, int i, int j) {
        for (int k = 0; k < X.rows(); ++k) {
            Int t = X.raw(k, i);
            X.set(k, i, X.raw(k, j));
            X.set(k, j, t);
        }
    };
    auto scale_row = [&](PMatrix& X, int i, const Int& u) {
        for (int k = 0; k < X.cols(); ++k) X.set(i, k, X.raw(i, k) * u);
    };
    // row_i -= t*row_j
    auto addmul_row = [&](PMatrix& X, int i, int j, const Int& t) {
        for (int k = 0; k < X.cols(); ++k) X.set(i, k, X.raw(i, k) - t * X.raw(j, k));
    };
    auto addmul_col = [&](PMatrix& X, int i, int j, const Int& t) {
        for (int k = 0; k < X.rows(); ++k) X.set(k, i, X.raw(k, i) - t * X.raw(k, j));
    };

    int n = std::min(r, c);
    res.exponents.assign(n, prec);
    for (int k = 0; k < n; ++k) {
        int best_i = -1, best_j = -1, best_v = prec;
        for (int i = k; i < r; ++i)
            for (int j = k; j < c; ++j) {
                int v = detail::entry_valuation(A.raw(i, j), ell, prec);
                if (v < best_v) {
                    best_v = v;
                    best_i = i;
                    best_j = j;
                }
            }
        if (best_i < 0) break; // nothing resolved below this point
        if (best_i != k) {
            swap_rows(A, best_i, k);
            swap_rows(U, best_i, k);
        }
        if (best_j != k) {
            swap_cols(A, best_j, k);
            swap_cols(V, best_j, k);
        }
        int v = best_v;
        Int unit = A.raw(k, k) / pow_int(ell, v);
        Int uinv = inv_mod(unit, mod);
        scale_row(A, k, uinv);
        scale_row(U, k, uinv);
        // pivot is now ell^v; all remaining entries have valuation >= v
        for (int i = k + 1; i < r; ++i) {
            if (A.raw(i, k) == 0) continue;
            Int t = A.raw(i, k) / pow_int(ell, v);
            addmul_row(A, i, k, t);
            addmul_row(U, i, k, t);
        }
        for (int j = k + 1; j < c; ++j) {
            if (A.raw(k, j) == 0) continue;
            Int t = A.raw(k, j) / pow_int(ell, v);
            addmul_col(A, j, k, t);
            addmul_col(V, j, k, t);
        }
        res.exponents[k] = v;
    }
    return res;
}

// Basis of { x : sum x_i row_i = 0 mod ell^m } after normalizing the row by
// ell^{v0}.  Pivot: minimal valuation, ties by smallest representative then
// smallest index.  Vectors are e_i - (row_i/row_pivot) e_pivot, lifted
// symmetrically, sign-normalized so the first nonzero entry is positive.
struct KernelBasis {
    int pivot = -1;
    int prec = 0; // precision of the quotients, m - v0
    std::vector<std::vector<Int>> vectors;
};

inline KernelBasis kernel_basis(const std::vector<PadicInt>& row)
{
    if (row.empty()) throw invalid_input("kernel_basis: empty row");
    long long ell = row[0].ell();
    int m = row[0].prec();
    for (auto& x : row)
        if (x.ell() != ell || x.prec() != m)
            throw invalid_input("kernel_basis: mixed precisions");

    int n = int(row.size());
    int v0 = m;
    int pivot = -1;
    for (int i = 0; i < n; ++i) {
        int v = row[i].valuation();
        if (v < v0 || (v == v0 && pivot >= 0 && row[i].value() < row[pivot].value())) {
            v0 = v;
            pivot = i;
        }
    }
    if (pivot < 0 || v0 >= m)
        throw precision_exhausted("kernel_basis: row vanishes at this precision");

    KernelBasis out;
    out.pivot = pivot;
    out.prec = m - v0;
    Int modq = pow_int(ell, out.prec);
    Int pinv = inv_mod(row[pivot].value() / pow_int(ell, v0), modq);
    for (int i = 0; i < n; ++i) {
        if (i == pivot) continue;
        // row_i has valuation >= v0 by choice of pivot
        Int ci = mod_floor((row[i].value() / pow_int(ell, v0)) * pinv, modq);
        std::vector<Int> vec(n, 0);
        vec[i] = 1;
        vec[pivot] = symmetric_lift(-ci, modq);
        for (auto& e : vec) {
            if (e == 0) continue;
            if (e < 0)
                for (auto& f : vec) f = -f;
            break;
        }
        out.vectors.push_back(std::move(vec));
    }
    return out;
}

} // namespace logkernel
