#pragma once

// Exact integer matrices over GMP: Hermite and Smith normal forms, left
// kernels and left division.  Row convention throughout: a matrix A is the
// map x -> x*A on row vectors.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <vector>

namespace halg {

struct ZMat {
    int rows = 0, cols = 0;
    std::vector<mpz_class> a;

    ZMat() = default;
    ZMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    mpz_class& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const mpz_class& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static ZMat identity(int n)
    {
        ZMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_zero() const
    {
        for (const auto& v : a) if (v != 0) return false;
        return true;
    }

    bool operator==(const ZMat& o) const
    {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

inline ZMat zmat_mul(const ZMat& A, const ZMat& B)
{
    if (A.cols != B.rows) throw std::invalid_argument("zmat_mul: shape");
    ZMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const mpz_class& v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) += v * B.at(k, j);
        }
    return C;
}

inline ZMat zmat_transpose(const ZMat& A)
{
    ZMat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

// Row Hermite form: U*A = H with U unimodular, H in row echelon form with
// positive pivots and entries above each pivot reduced into [0, pivot).
struct ZHermite {
    ZMat H, U;
    std::vector<int> pivots; // pivot column of each nonzero row
    int rank() const { return static_cast<int>(pivots.size()); }
};

inline ZHermite zmat_hermite(const ZMat& A)
{
    ZHermite h;
    h.H = A;
    h.U = ZMat::identity(A.rows);
    ZMat& H = h.H;
    ZMat& U = h.U;
    int m = A.rows, n = A.cols, r = 0;

    auto row_sub = [&](int dst, int src, const mpz_class& q) {
        if (q == 0) return;
        for (int j = 0; j < n; ++j) H.at(dst, j) -= q * H.at(src, j);
        for (int j = 0; j < m; ++j) U.at(dst, j) -= q * U.at(src, j);
    };
    auto row_swap = [&](int i, int k) {
        if (i == k) return;
        for (int j = 0; j < n; ++j) std::swap(H.at(i, j), H.at(k, j));
        for (int j = 0; j < m; ++j) std::swap(U.at(i, j), U.at(k, j));
    };
    auto row_neg = [&](int i) {
        for (int j = 0; j < n; ++j) H.at(i, j) = -H.at(i, j);
        for (int j = 0; j < m; ++j) U.at(i, j) = -U.at(i, j);
    };

    for (int c = 0; c < n && r < m; ++c) {
        // Euclid on the column below row r until a single nonzero survives.
        while (true) {
            int best = -1;
            for (int i = r; i < m; ++i) {
                if (H.at(i, c) == 0) continue;
                if (best < 0 || mpz_cmpabs(H.at(i, c).get_mpz_t(), H.at(best, c).get_mpz_t()) < 0)
                    best = i;
            }
            if (best < 0) break;
            row_swap(r, best);
            bool again = false;
            for (int i = r + 1; i < m; ++i) {
                if (H.at(i, c) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), H.at(i, c).get_mpz_t(), H.at(r, c).get_mpz_t());
                row_sub(i, r, q);
                if (H.at(i, c) != 0) again = true;
            }
            if (!again) break;
        }
        if (H.at(r, c) == 0) continue;
        if (H.at(r, c) < 0) row_neg(r);
        for (int i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), H.at(i, c).get_mpz_t(), H.at(r, c).get_mpz_t());
            row_sub(i, r, q);
        }
        h.pivots.push_back(c);
        ++r;
    }
    return h;
}

// Basis of { x : x*A = 0 }, as rows.  Complete: it is a lattice basis.
inline ZMat zmat_left_kernel(const ZMat& A)
{
    ZHermite h = zmat_hermite(A);
    int r = h.rank();
    ZMat K(A.rows - r, A.rows);
    for (int i = r; i < A.rows; ++i)
        for (int j = 0; j < A.rows; ++j) K.at(i - r, j) = h.U.at(i, j);
    return K;
}

// One X with X*A = B, if any.
inline std::optional<ZMat> zmat_solve_left(const ZMat& A, const ZMat& B)
{
    if (A.cols != B.cols) throw std::invalid_argument("zmat_solve_left: shape");
    ZHermite h = zmat_hermite(A);
    int r = h.rank(), n = A.cols;
    ZMat X(B.rows, A.rows);
    for (int b = 0; b < B.rows; ++b) {
        std::vector<mpz_class> v(n);
        for (int j = 0; j < n; ++j) v[j] = B.at(b, j);
        std::vector<mpz_class> y(r);
        for (int t = 0; t < r; ++t) {
            int c = h.pivots[t];
            if (v[c] == 0) continue;
            mpz_class q, rem;
            mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v[c].get_mpz_t(), h.H.at(t, c).get_mpz_t());
            if (rem != 0) return std::nullopt;
            for (int j = 0; j < n; ++j) v[j] -= q * h.H.at(t, j);
            y[t] = q;
        }
        for (int j = 0; j < n; ++j)
            if (v[j] != 0) return std::nullopt;
        for (int j = 0; j < A.rows; ++j) {
            mpz_class s = 0;
            for (int t = 0; t < r; ++t) s += y[t] * h.U.at(t, j);
            X.at(b, j) = s;
        }
    }
    return X;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline mpz_class zmat_det(const ZMat& A)
{
    if (A.rows != A.cols) throw std::invalid_argument("zmat_det: not square");
    int n = A.rows;
    if (n == 0) return 1;
    ZMat M = A;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M.at(k, k) == 0) {
            int s = -1;
            for (int i = k + 1; i < n; ++i)
                if (M.at(i, k) != 0) { s = i; break; }
            if (s < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(s, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j);
                mpz_divexact(M.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = M.at(k, k);
    }
    return sign * M.at(n - 1, n - 1);
}

// Smith normal form: U*A*V = S diagonal, nonnegative, divisibility chain.
struct ZSmith {
    ZMat U, S, V;
};

inline ZSmith zmat_smith(const ZMat& A)
{
    ZSmith s;
    s.S = A;
    s.U = ZMat::identity(A.rows);
    s.V = ZMat::identity(A.cols);
    ZMat& S = s.S;
    ZMat& U = s.U;
    ZMat& V = s.V;
    int m = A.rows, n = A.cols;

    auto row_sub = [&](int dst, int src, const mpz_class& q) {
        if (q == 0) return;
        for (int j = 0; j < n; ++j) S.at(dst, j) -= q * S.at(src, j);
        for (int j = 0; j < m; ++j) U.at(dst, j) -= q * U.at(src, j);
    };
    auto col_sub = [&](int dst, int src, const mpz_class& q) {
        if (q == 0) return;
        for (int i = 0; i < m; ++i) S.at(i, dst) -= q * S.at(i, src);
        for (int i = 0; i < n; ++i) V.at(i, dst) -= q * V.at(i, src);
    };
    auto row_swap = [&](int i, int k) {
        if (i == k) return;
        for (int j = 0; j < n; ++j) std::swap(S.at(i, j), S.at(k, j));
        for (int j = 0; j < m; ++j) std::swap(U.at(i, j), U.at(k, j));
    };
    auto col_swap = [&](int i, int k) {
        if (i == k) return;
        for (int r = 0; r < m; ++r) std::swap(S.at(r, i), S.at(r, k));
        for (int r = 0; r < n; ++r) std::swap(V.at(r, i), V.at(r, k));
    };

    int t = 0;
    int lim = std::min(m, n);
    while (t < lim) {
        // locate a nonzero entry of minimal magnitude in the trailing block
        int bi = -1, bj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (S.at(i, j) == 0) continue;
                if (bi < 0 || mpz_cmpabs(S.at(i, j).get_mpz_t(), S.at(bi, bj).get_mpz_t()) < 0) {
                    bi = i; bj = j;
                }
            }
        if (bi < 0) break; // trailing block is zero
        row_swap(t, bi);
        col_swap(t, bj);

        bool clean = true;
        for (int i = t + 1; i < m; ++i) {
            if (S.at(i, t) == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), S.at(i, t).get_mpz_t(), S.at(t, t).get_mpz_t());
            row_sub(i, t, q);
            if (S.at(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < n; ++j) {
            if (S.at(t, j) == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), S.at(t, j).get_mpz_t(), S.at(t, t).get_mpz_t());
            col_sub(j, t, q);
            if (S.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;

        // enforce divisibility of the trailing block by the pivot
        bool redo = false;
        for (int i = t + 1; i < m && !redo; ++i)
            for (int j = t + 1; j < n && !redo; ++j)
                if (S.at(i, j) % S.at(t, t) != 0) {
                    row_sub(t, i, -1); // add row i to row t, then re-clear
                    redo = true;
                }
        if (redo) continue;

        if (S.at(t, t) < 0) {
            for (int j = 0; j < n; ++j) S.at(t, j) = -S.at(t, j);
            for (int j = 0; j < m; ++j) U.at(t, j) = -U.at(t, j);
        }
        ++t;
    }
    return s;
}

inline std::vector<mpz_class> zmat_smith_diagonal(const ZMat& A)
{
    ZSmith s = zmat_smith(A);
    std::vector<mpz_class> d;
    int lim = std::min(A.rows, A.cols);
    for (int i = 0; i < lim; ++i) d.push_back(s.S.at(i, i));
    return d;
}

} // namespace halg
