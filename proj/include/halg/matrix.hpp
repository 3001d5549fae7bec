#pragma once

// Matrices over a ring backend: the free-module-map layer.
//
// A matrix A (m x n) over ring R represents, in the left/row convention,
// the map Lambda^(1xm) -> Lambda^(1xn), x -> x*A.  Empty matrices are
// first-class and represent zero modules and zero maps.

#include "halg/fp.hpp"
#include "halg/quiver.hpp"
#include "halg/ring.hpp"
#include "halg/zmat.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace halg {

template <class R>
struct Mat {
    std::shared_ptr<const R> ring;
    int rows = 0, cols = 0;
    std::vector<typename R::Elem> e;

    Mat() = default;
    Mat(std::shared_ptr<const R> rg, int r, int c)
        : ring(std::move(rg)), rows(r), cols(c),
          e(static_cast<size_t>(r) * c, ring->zero()) {}

    typename R::Elem& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
    const typename R::Elem& at(int i, int j) const
    {
        return e[static_cast<size_t>(i) * cols + j];
    }

    static Mat identity(std::shared_ptr<const R> rg, int n)
    {
        Mat m(rg, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = rg->one();
        return m;
    }

    bool is_zero() const
    {
        for (const auto& v : e)
            if (!ring->is_zero(v)) return false;
        return true;
    }

    bool same_entries(const Mat& o) const
    {
        if (rows != o.rows || cols != o.cols) return false;
        for (size_t i = 0; i < e.size(); ++i)
            if (!ring->eq(e[i], o.e[i])) return false;
        return true;
    }

    Mat row(int i) const
    {
        Mat r(ring, 1, cols);
        for (int j = 0; j < cols; ++j) r.at(0, j) = at(i, j);
        return r;
    }
};

template <class R>
void check_same_ring(const Mat<R>& a, const Mat<R>& b)
{
    if (a.ring != b.ring)
        throw Error(ErrorKind::MixedRings, "matrices over different ring instances");
}

template <class R>
Mat<R> mat_mul(const Mat<R>& A, const Mat<R>& B)
{
    check_same_ring(A, B);
    if (A.cols != B.rows) throw Error(ErrorKind::Internal, "mat_mul: shape");
    const R& rg = *A.ring;
    Mat<R> C(A.ring, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const auto& v = A.at(i, k);
            if (rg.is_zero(v)) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = rg.add(C.at(i, j), rg.mul(v, B.at(k, j)));
        }
    return C;
}

template <class R>
Mat<R> mat_add(const Mat<R>& A, const Mat<R>& B)
{
    check_same_ring(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw Error(ErrorKind::Internal, "mat_add: shape");
    Mat<R> C(A.ring, A.rows, A.cols);
    for (size_t i = 0; i < A.e.size(); ++i) C.e[i] = A.ring->add(A.e[i], B.e[i]);
    return C;
}

template <class R>
Mat<R> mat_neg(const Mat<R>& A)
{
    Mat<R> C(A.ring, A.rows, A.cols);
    for (size_t i = 0; i < A.e.size(); ++i) C.e[i] = A.ring->neg(A.e[i]);
    return C;
}

template <class R>
Mat<R> mat_sub(const Mat<R>& A, const Mat<R>& B) { return mat_add(A, mat_neg(B)); }

// Vertical stack: rows of A above rows of B.
template <class R>
Mat<R> mat_vstack(const Mat<R>& A, const Mat<R>& B)
{
    check_same_ring(A, B);
    if (A.cols != B.cols) throw Error(ErrorKind::Internal, "mat_vstack: shape");
    Mat<R> C(A.ring, A.rows + B.rows, A.cols);
    std::copy(A.e.begin(), A.e.end(), C.e.begin());
    std::copy(B.e.begin(), B.e.end(), C.e.begin() + A.e.size());
    return C;
}

// Horizontal juxtaposition [A | B].
template <class R>
Mat<R> mat_hstack(const Mat<R>& A, const Mat<R>& B)
{
    check_same_ring(A, B);
    if (A.rows != B.rows) throw Error(ErrorKind::Internal, "mat_hstack: shape");
    Mat<R> C(A.ring, A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

template <class R>
Mat<R> mat_block_diag(const Mat<R>& A, const Mat<R>& B)
{
    check_same_ring(A, B);
    Mat<R> C(A.ring, A.rows + B.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) C.at(A.rows + i, A.cols + j) = B.at(i, j);
    return C;
}

template <class R>
Mat<R> mat_cols(const Mat<R>& A, int from, int count)
{
    Mat<R> C(A.ring, A.rows, count);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < count; ++j) C.at(i, j) = A.at(i, from + j);
    return C;
}

template <class R>
Mat<R> mat_rows(const Mat<R>& A, int from, int count)
{
    Mat<R> C(A.ring, count, A.cols);
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(from + i, j);
    return C;
}

// Dual of a free-module map under Hom(-, Lambda): entry-wise opposite map on
// the transpose; the result lives over the opposite ring instance.
template <class R>
Mat<R> opposite_transfer(const Mat<R>& A)
{
    Mat<R> T(A.ring->opposite(), A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.ring->op_elem(A.at(i, j));
    return T;
}

// ---------------------------------------------------------------------------
// Backend matrix primitives, left convention.

inline Mat<ZRing> kernel_left(const Mat<ZRing>& A)
{
    ZMat z(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) z.at(i, j) = A.at(i, j);
    ZMat k = zmat_left_kernel(z);
    Mat<ZRing> K(A.ring, k.rows, k.cols);
    for (int i = 0; i < k.rows; ++i)
        for (int j = 0; j < k.cols; ++j) K.at(i, j) = k.at(i, j);
    return K;
}

inline std::optional<Mat<ZRing>> solve_left(const Mat<ZRing>& A, const Mat<ZRing>& B)
{
    check_same_ring(A, B);
    ZMat za(A.rows, A.cols), zb(B.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) za.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) zb.at(i, j) = B.at(i, j);
    auto x = zmat_solve_left(za, zb);
    if (!x) return std::nullopt;
    Mat<ZRing> X(A.ring, x->rows, x->cols);
    for (int i = 0; i < x->rows; ++i)
        for (int j = 0; j < x->cols; ++j) X.at(i, j) = x->at(i, j);
    return X;
}

namespace detail {

// Flatten the right-multiplication action of A on row vectors: an F_p matrix
// acting on coordinates of Lambda^(1xm).
inline FpMat flatten_action(const Mat<QuiverAlgebra>& A)
{
    const auto& rg = *A.ring;
    int d = rg.dim();
    FpMat F(rg.p(), A.rows * d, A.cols * d);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            if (rg.is_zero(A.at(i, j))) continue;
            FpMat blk = rg.right_mul_matrix(A.at(i, j));
            for (int s = 0; s < d; ++s)
                for (int t = 0; t < d; ++t)
                    F.at(i * d + s, j * d + t) = blk.at(s, t);
        }
    return F;
}

inline FpMat flatten_rows(const Mat<QuiverAlgebra>& A)
{
    const auto& rg = *A.ring;
    int d = rg.dim();
    FpMat F(rg.p(), A.rows, A.cols * d);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            for (int t = 0; t < d; ++t) F.at(i, j * d + t) = A.at(i, j)[t];
    return F;
}

inline Mat<QuiverAlgebra> unflatten_rows(std::shared_ptr<const QuiverAlgebra> rg,
                                         const FpMat& F, int cols)
{
    int d = rg->dim();
    Mat<QuiverAlgebra> A(rg, F.rows, cols);
    for (int i = 0; i < F.rows; ++i)
        for (int j = 0; j < cols; ++j) {
            auto v = rg->zero();
            for (int t = 0; t < d; ++t) v[t] = F.at(i, j * d + t);
            A.at(i, j) = v;
        }
    return A;
}

} // namespace detail

// Over a finite-dimensional algebra the F_p kernel of the flattened action
// is a Lambda-submodule and any F_p basis of it generates it over Lambda.
inline Mat<QuiverAlgebra> kernel_left(const Mat<QuiverAlgebra>& A)
{
    FpMat K = fp_left_kernel(detail::flatten_action(A));
    // kernel rows are flat coordinates of Lambda^(1 x rows)
    return detail::unflatten_rows(A.ring, K, A.rows);
}

inline std::optional<Mat<QuiverAlgebra>> solve_left(const Mat<QuiverAlgebra>& A,
                                                    const Mat<QuiverAlgebra>& B)
{
    check_same_ring(A, B);
    FpMat X;
    if (!fp_solve_left(detail::flatten_action(A), detail::flatten_rows(B), X))
        return std::nullopt;
    return detail::unflatten_rows(A.ring, X, A.rows);
}

// ---------------------------------------------------------------------------
// Side-aware public operations (spec contract).  Side::Left solves x*A = 0
// on row vectors; Side::Right solves A*y = 0 on column vectors, implemented
// by transporting through the opposite ring.

template <class R>
Mat<R> kernel_gens(const Mat<R>& A, Side side)
{
    if (side == Side::Left) return kernel_left(A);
    return opposite_transfer(kernel_left(opposite_transfer(A)));
}

// Left: X*A = B.  Right: A*X = B.
template <class R>
std::optional<Mat<R>> solve(const Mat<R>& A, const Mat<R>& B, Side side)
{
    if (side == Side::Left) return solve_left(A, B);
    auto y = solve_left(opposite_transfer(A), opposite_transfer(B));
    if (!y) return std::nullopt;
    return opposite_transfer(*y);
}

// Solve X*A = B modulo the row span of Rel: returns X with
// X*A congruent to B (mod rowspan Rel).
template <class R>
std::optional<Mat<R>> solve_left_mod(const Mat<R>& A, const Mat<R>& Rel, const Mat<R>& B)
{
    if (Rel.rows == 0) return solve_left(A, B);
    auto x = solve_left(mat_vstack(A, Rel), B);
    if (!x) return std::nullopt;
    return mat_cols(*x, 0, A.rows);
}

} // namespace halg
