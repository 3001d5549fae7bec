#pragma once

// Dense linear algebra over a prime field F_p.  Everything here is exact
// word-sized arithmetic; p is carried by value on each matrix.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace halg {

inline bool is_prime_u32(uint32_t n)
{
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline uint32_t fp_norm(int64_t v, uint32_t p)
{
    int64_t r = v % static_cast<int64_t>(p);
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
}

inline uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p) { return (a + b) % p; }
inline uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p) { return (a + p - b) % p; }
inline uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p)
{
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
}

inline uint32_t fp_inv(uint32_t a, uint32_t p)
{
    // extended Euclid
    if (a == 0) throw std::domain_error("fp_inv: zero");
    int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<uint32_t>(t);
}

// Row-major dense matrix over F_p.
struct FpMat {
    uint32_t p = 2;
    int rows = 0, cols = 0;
    std::vector<uint32_t> a;

    FpMat() = default;
    FpMat(uint32_t p_, int r, int c) : p(p_), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    uint32_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    uint32_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static FpMat identity(uint32_t p, int n)
    {
        FpMat m(p, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_zero() const
    {
        for (uint32_t v : a) if (v) return false;
        return true;
    }
};

inline FpMat fp_mul(const FpMat& A, const FpMat& B)
{
    if (A.cols != B.rows || A.p != B.p) throw std::invalid_argument("fp_mul: shape");
    FpMat C(A.p, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            uint32_t v = A.at(i, k);
            if (!v) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = fp_add(C.at(i, j), fp_mul(v, B.at(k, j), A.p), A.p);
        }
    return C;
}

inline FpMat fp_transpose(const FpMat& A)
{
    FpMat T(A.p, A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

inline FpMat fp_vstack(const FpMat& A, const FpMat& B)
{
    if (A.cols != B.cols || A.p != B.p) throw std::invalid_argument("fp_vstack: shape");
    FpMat C(A.p, A.rows + B.rows, A.cols);
    std::copy(A.a.begin(), A.a.end(), C.a.begin());
    std::copy(B.a.begin(), B.a.end(), C.a.begin() + A.a.size());
    return C;
}

// Row echelon state usable for rank, membership tests and reduction.
// Rows are kept reduced (pivot = 1, pivot column cleared elsewhere).
struct FpEchelon {
    uint32_t p = 2;
    int cols = 0;
    std::vector<std::vector<uint32_t>> rows; // echelon rows
    std::vector<int> pivots;                 // pivot column per row, increasing

    explicit FpEchelon(uint32_t p_ = 2, int cols_ = 0) : p(p_), cols(cols_) {}

    int rank() const { return static_cast<int>(rows.size()); }

    // Reduce v against the echelon; returns the residue.
    std::vector<uint32_t> reduce(std::vector<uint32_t> v) const
    {
        for (size_t r = 0; r < rows.size(); ++r) {
            uint32_t c = v[pivots[r]];
            if (!c) continue;
            for (int j = 0; j < cols; ++j)
                v[j] = fp_sub(v[j], fp_mul(c, rows[r][j], p), p);
        }
        return v;
    }

    // Insert v if independent; returns true when the rank grew.
    bool insert(std::vector<uint32_t> v)
    {
        v = reduce(std::move(v));
        int piv = -1;
        for (int j = 0; j < cols; ++j) if (v[j]) { piv = j; break; }
        if (piv < 0) return false;
        uint32_t inv = fp_inv(v[piv], p);
        for (int j = 0; j < cols; ++j) v[j] = fp_mul(v[j], inv, p);
        // clear the new pivot column in existing rows
        for (size_t r = 0; r < rows.size(); ++r) {
            uint32_t c = rows[r][piv];
            if (!c) continue;
            for (int j = 0; j < cols; ++j)
                rows[r][j] = fp_sub(rows[r][j], fp_mul(c, v[j], p), p);
        }
        size_t pos = 0;
        while (pos < pivots.size() && pivots[pos] < piv) ++pos;
        rows.insert(rows.begin() + pos, std::move(v));
        pivots.insert(pivots.begin() + pos, piv);
        return true;
    }

    bool contains(const std::vector<uint32_t>& v) const
    {
        auto r = reduce(v);
        for (uint32_t x : r) if (x) return false;
        return true;
    }
};

inline FpEchelon fp_echelon(const FpMat& A)
{
    FpEchelon e(A.p, A.cols);
    for (int i = 0; i < A.rows; ++i)
        e.insert(std::vector<uint32_t>(A.a.begin() + static_cast<size_t>(i) * A.cols,
                                       A.a.begin() + static_cast<size_t>(i + 1) * A.cols));
    return e;
}

inline int fp_rank(const FpMat& A) { return fp_echelon(A).rank(); }

// Basis of { x row vector : x * A = 0 }, returned as rows.
inline FpMat fp_left_kernel(const FpMat& A)
{
    // Eliminate on [A | I]; kernel rows are those whose A-part vanished.
    int m = A.rows, n = A.cols;
    FpMat W(A.p, m, n + m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) W.at(i, j) = A.at(i, j);
        W.at(i, n + i) = 1;
    }
    // Gaussian elimination restricted to the first n columns.
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i) if (W.at(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < n + m; ++j) std::swap(W.at(r, j), W.at(piv, j));
        uint32_t inv = fp_inv(W.at(r, c), A.p);
        for (int j = 0; j < n + m; ++j) W.at(r, j) = fp_mul(W.at(r, j), inv, A.p);
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            uint32_t f = W.at(i, c);
            if (!f) continue;
            for (int j = 0; j < n + m; ++j)
                W.at(i, j) = fp_sub(W.at(i, j), fp_mul(f, W.at(r, j), A.p), A.p);
        }
        ++r;
    }
    FpMat K(A.p, m - r, m);
    for (int i = r; i < m; ++i)
        for (int j = 0; j < m; ++j) K.at(i - r, j) = W.at(i, n + j);
    return K;
}

// One solution X of X * A = B, or false.
inline bool fp_solve_left(const FpMat& A, const FpMat& B, FpMat& X)
{
    if (A.cols != B.cols || A.p != B.p) throw std::invalid_argument("fp_solve_left: shape");
    // Echelonize [A | I]; track transformed identity to express residues.
    int m = A.rows, n = A.cols;
    FpMat W(A.p, m, n + m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) W.at(i, j) = A.at(i, j);
        W.at(i, n + i) = 1;
    }
    std::vector<int> pivs;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i) if (W.at(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < n + m; ++j) std::swap(W.at(r, j), W.at(piv, j));
        uint32_t inv = fp_inv(W.at(r, c), A.p);
        for (int j = 0; j < n + m; ++j) W.at(r, j) = fp_mul(W.at(r, j), inv, A.p);
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            uint32_t f = W.at(i, c);
            if (!f) continue;
            for (int j = 0; j < n + m; ++j)
                W.at(i, j) = fp_sub(W.at(i, j), fp_mul(f, W.at(r, j), A.p), A.p);
        }
        pivs.push_back(c);
        ++r;
    }
    X = FpMat(A.p, B.rows, m);
    for (int b = 0; b < B.rows; ++b) {
        std::vector<uint32_t> v(B.a.begin() + static_cast<size_t>(b) * n,
                                B.a.begin() + static_cast<size_t>(b + 1) * n);
        std::vector<uint32_t> coeff(m, 0);
        for (int t = 0; t < r; ++t) {
            uint32_t c = v[pivs[t]];
            if (!c) continue;
            for (int j = 0; j < n; ++j) v[j] = fp_sub(v[j], fp_mul(c, W.at(t, j), A.p), A.p);
            for (int j = 0; j < m; ++j)
                coeff[j] = fp_add(coeff[j], fp_mul(c, W.at(t, n + j), A.p), A.p);
        }
        for (uint32_t x : v) if (x) return false;
        for (int j = 0; j < m; ++j) X.at(b, j) = coeff[j];
    }
    return true;
}

} // namespace halg
