#pragma once

// Stable homomorphisms: Hom(X, H) modulo maps factoring through a projective
// surjecting onto H (the free cover on H's generators).  Reported as an
// abelian group: over the integers by canonical decomposition, over an fd
// algebra as an elementary abelian p-group.

#include "halg/homology.hpp"

#include <vector>

namespace halg {

struct StableHomReport {
    long rank = 0;                    // free rank (integers only)
    std::vector<std::string> factors; // invariant factors / p repeated dim times

    bool operator==(const StableHomReport& o) const
    {
        return rank == o.rank && factors == o.factors;
    }
    bool is_zero() const { return rank == 0 && factors.empty(); }
};

// ---------------------------------------------------------------------------
// Integer backend

namespace detail {

// Lattice of matrices Phi with X.rel * Phi contained in the row span of
// H.rel, flattened row-major to length gX*gH.
inline Mat<ZRing> zhom_lattice(const FPModule<ZRing>& X, const FPModule<ZRing>& H)
{
    int gX = X.gens(), gH = H.gens(), rX = X.rel.rows, rH = H.rel.rows;
    auto Z = X.ring;
    Mat<ZRing> C(Z, gX * gH + rX * rH, rX * gH);
    for (int a = 0; a < rX; ++a)
        for (int j = 0; j < gH; ++j) {
            for (int i = 0; i < gX; ++i) C.at(i * gH + j, a * gH + j) = X.rel.at(a, i);
            for (int b = 0; b < rH; ++b)
                C.at(gX * gH + a * rH + b, a * gH + j) = -H.rel.at(b, j);
        }
    Mat<ZRing> K = kernel_left(C);
    return basis_rows(mat_cols(K, 0, gX * gH));
}

// Sublattice of maps that are zero into H plus maps factoring through the
// free cover of H.
inline Mat<ZRing> zhom_trivial(const FPModule<ZRing>& X, const FPModule<ZRing>& H)
{
    int gX = X.gens(), gH = H.gens(), rX = X.rel.rows, rH = H.rel.rows;
    auto Z = X.ring;
    Mat<ZRing> zero_rows(Z, gX * rH, gX * gH);
    for (int i = 0; i < gX; ++i)
        for (int b = 0; b < rH; ++b)
            for (int j = 0; j < gH; ++j) zero_rows.at(i * rH + b, i * gH + j) = H.rel.at(b, j);
    // Hom(X, free cover): X.rel * Psi = 0 exactly
    Mat<ZRing> C(Z, gX * gH, rX * gH);
    for (int a = 0; a < rX; ++a)
        for (int j = 0; j < gH; ++j)
            for (int i = 0; i < gX; ++i) C.at(i * gH + j, a * gH + j) = X.rel.at(a, i);
    Mat<ZRing> fact = kernel_left(C);
    return mat_vstack(zero_rows, fact);
}

} // namespace detail

struct StableHomZ {
    Mat<ZRing> lhom;        // basis of the hom lattice
    FPModule<ZRing> quo;    // hom lattice modulo trivial maps
    StableHomReport report;
};

inline StableHomZ stable_hom(const FPModule<ZRing>& X, const FPModule<ZRing>& H)
{
    check_same_ambient(X, H);
    StableHomZ out;
    out.lhom = detail::zhom_lattice(X, H);
    Mat<ZRing> triv = detail::zhom_trivial(X, H);
    Mat<ZRing> expr(X.ring, 0, out.lhom.rows);
    if (triv.rows > 0 && out.lhom.rows > 0) {
        auto e = solve_left(out.lhom, triv);
        if (!e) throw Error(ErrorKind::Internal, "stable hom: trivial maps outside lattice");
        expr = *e;
    } else if (triv.rows > 0) {
        expr = Mat<ZRing>(X.ring, 0, 0);
    }
    out.quo = FPModule<ZRing>(X.ring, X.side, expr);
    auto d = canonical_decomposition(out.quo);
    out.report.rank = d.rank;
    for (const auto& f : d.factors) out.report.factors.push_back(f.get_str());
    return out;
}

// Does precomposition with c : T -> Y induce an isomorphism of stable homs
// Hom(Y, H) -> Hom(T, H)?
inline bool stable_hom_induced_iso(const ModuleMap<ZRing>& c, const FPModule<ZRing>& H,
                                   StableHomReport* from = nullptr,
                                   StableHomReport* to = nullptr)
{
    StableHomZ hy = stable_hom(c.tgt, H);
    StableHomZ ht = stable_hom(c.src, H);
    if (from) *from = hy.report;
    if (to) *to = ht.report;
    int gT = c.src.gens(), gH = H.gens();
    Mat<ZRing> images(c.mx.ring, hy.lhom.rows, gT * gH);
    for (int r = 0; r < hy.lhom.rows; ++r) {
        Mat<ZRing> Phi(c.mx.ring, c.tgt.gens(), gH);
        for (int i = 0; i < c.tgt.gens(); ++i)
            for (int j = 0; j < gH; ++j) Phi.at(i, j) = hy.lhom.at(r, i * gH + j);
        Mat<ZRing> img = mat_mul(c.mx, Phi);
        for (int i = 0; i < gT; ++i)
            for (int j = 0; j < gH; ++j) images.at(r, i * gH + j) = img.at(i, j);
    }
    if (hy.lhom.rows == 0)
        return is_zero(ht.quo); // zero map: iso iff target stable hom vanishes
    if (ht.lhom.rows == 0) {
        for (int r = 0; r < images.rows; ++r)
            if (!images.row(r).is_zero()) return false;
        return is_zero(hy.quo);
    }
    auto e = solve_left(ht.lhom, images);
    if (!e) throw Error(ErrorKind::Internal, "stable hom: image outside hom lattice");
    ModuleMap<ZRing> ind(hy.quo, ht.quo, *e);
    return is_isomorphism(ind);
}

// ---------------------------------------------------------------------------
// fd backend: all F_p linear algebra on flattened map matrices.

namespace detail {

struct FdHomSpace {
    uint32_t p = 2;
    int coords = 0;    // gX * gH * D
    FpMat hom;         // basis rows of the hom space
    FpEchelon trivial; // span of zero-into-H maps and factoring maps
    int stable_dim = 0;
};

inline FdHomSpace fdhom_space(const FPModule<QuiverAlgebra>& X,
                              const FPModule<QuiverAlgebra>& H)
{
    auto rg = X.ring;
    int D = rg->dim(), gX = X.gens(), gH = H.gens(), rX = X.rel.rows;
    FlatModule FH = flatten_module(H);
    FdHomSpace out;
    out.p = rg->p();
    out.coords = gX * gH * D;

    // constraint: for each relation row a of X, the reduced H-coordinates of
    // rel[a] * Phi vanish
    FpMat C(out.p, out.coords, rX * FH.dim);
    for (int a = 0; a < rX; ++a)
        for (int i = 0; i < gX; ++i)
            for (int t = 0; t < D; ++t) {
                auto prod = rg->mul(X.rel.at(a, i), rg->basis_elem(t));
                if (rg->is_zero(prod)) continue;
                for (int j = 0; j < gH; ++j) {
                    std::vector<uint32_t> amb(static_cast<size_t>(gH) * D, 0);
                    for (int u = 0; u < D; ++u) amb[static_cast<size_t>(j) * D + u] = prod[u];
                    auto q = FH.coords(amb);
                    for (int cdx = 0; cdx < FH.dim; ++cdx)
                        C.at((i * gH + j) * D + t, a * FH.dim + cdx) = q[cdx];
                }
            }
    out.hom = fp_left_kernel(C);

    // trivial subspace: zero maps
    out.trivial = FpEchelon(out.p, out.coords);
    for (int i = 0; i < gX; ++i)
        for (const auto& w : FH.relspan.rows) {
            std::vector<uint32_t> v(out.coords, 0);
            for (int j = 0; j < gH; ++j)
                for (int u = 0; u < D; ++u)
                    v[(static_cast<size_t>(i) * gH + j) * D + u] = w[static_cast<size_t>(j) * D + u];
            out.trivial.insert(std::move(v));
        }
    // factoring maps: X.rel * Psi = 0 exactly in the free cover
    FpMat C2(out.p, out.coords, rX * gH * D);
    for (int a = 0; a < rX; ++a)
        for (int i = 0; i < gX; ++i)
            for (int t = 0; t < D; ++t) {
                auto prod = rg->mul(X.rel.at(a, i), rg->basis_elem(t));
                if (rg->is_zero(prod)) continue;
                for (int j = 0; j < gH; ++j)
                    for (int u = 0; u < D; ++u)
                        C2.at((i * gH + j) * D + t, (a * gH + j) * D + u) = prod[u];
            }
    FpMat fact = fp_left_kernel(C2);
    for (int r = 0; r < fact.rows; ++r)
        out.trivial.insert(std::vector<uint32_t>(
            fact.a.begin() + static_cast<size_t>(r) * out.coords,
            fact.a.begin() + static_cast<size_t>(r + 1) * out.coords));

    FpEchelon all = out.trivial;
    int base = all.rank();
    for (int r = 0; r < out.hom.rows; ++r)
        all.insert(std::vector<uint32_t>(out.hom.a.begin() + static_cast<size_t>(r) * out.coords,
                                         out.hom.a.begin() + static_cast<size_t>(r + 1) * out.coords));
    out.stable_dim = all.rank() - base;
    return out;
}

} // namespace detail

inline StableHomReport stable_hom(const FPModule<QuiverAlgebra>& X,
                                  const FPModule<QuiverAlgebra>& H)
{
    check_same_ambient(X, H);
    auto sp = detail::fdhom_space(X, H);
    StableHomReport rep;
    for (int i = 0; i < sp.stable_dim; ++i) rep.factors.push_back(std::to_string(sp.p));
    return rep;
}

inline bool stable_hom_induced_iso(const ModuleMap<QuiverAlgebra>& c,
                                   const FPModule<QuiverAlgebra>& H,
                                   StableHomReport* from = nullptr,
                                   StableHomReport* to = nullptr)
{
    auto rg = c.src.ring;
    int D = rg->dim(), gH = H.gens();
    auto spY = detail::fdhom_space(c.tgt, H);
    auto spT = detail::fdhom_space(c.src, H);
    if (from) {
        *from = StableHomReport{};
        for (int i = 0; i < spY.stable_dim; ++i) from->factors.push_back(std::to_string(spY.p));
    }
    if (to) {
        *to = StableHomReport{};
        for (int i = 0; i < spT.stable_dim; ++i) to->factors.push_back(std::to_string(spT.p));
    }
    if (spY.stable_dim != spT.stable_dim) return false;
    if (spY.stable_dim == 0) return true;

    // stable bases: hom rows reduced against the trivial span
    auto stable_basis = [&](const detail::FdHomSpace& sp) {
        FpEchelon acc = sp.trivial;
        std::vector<std::vector<uint32_t>> reps;
        for (int r = 0; r < sp.hom.rows; ++r) {
            std::vector<uint32_t> v(sp.hom.a.begin() + static_cast<size_t>(r) * sp.coords,
                                    sp.hom.a.begin() + static_cast<size_t>(r + 1) * sp.coords);
            v = acc.reduce(std::move(v));
            bool nz = false;
            for (uint32_t x : v) if (x) { nz = true; break; }
            if (!nz) continue;
            reps.push_back(v);
            acc.insert(std::move(v));
            if (static_cast<int>(reps.size()) == sp.stable_dim) break;
        }
        return reps;
    };
    auto repsY = stable_basis(spY);
    auto repsT = stable_basis(spT);

    // coordinates of a T-side map in the T stable basis, modulo trivial maps
    FpMat Tbasis(spT.p, static_cast<int>(repsT.size()), spT.coords);
    for (size_t r = 0; r < repsT.size(); ++r)
        for (int j = 0; j < spT.coords; ++j) Tbasis.at(static_cast<int>(r), j) = repsT[r][j];

    FpMat S(spT.p, static_cast<int>(repsY.size()), static_cast<int>(repsT.size()));
    for (size_t r = 0; r < repsY.size(); ++r) {
        // unflatten, precompose with c, flatten, reduce
        Mat<QuiverAlgebra> Phi(rg, c.tgt.gens(), gH);
        for (int i = 0; i < c.tgt.gens(); ++i)
            for (int j = 0; j < gH; ++j) {
                auto e = rg->zero();
                for (int u = 0; u < D; ++u)
                    e[u] = repsY[r][(static_cast<size_t>(i) * gH + j) * D + u];
                Phi.at(i, j) = e;
            }
        Mat<QuiverAlgebra> img = mat_mul(c.mx, Phi);
        std::vector<uint32_t> flat(spT.coords, 0);
        for (int i = 0; i < c.src.gens(); ++i)
            for (int j = 0; j < gH; ++j)
                for (int u = 0; u < D; ++u)
                    flat[(static_cast<size_t>(i) * gH + j) * D + u] = img.at(i, j)[u];
        auto red = spT.trivial.reduce(std::move(flat));
        FpMat rhs(spT.p, 1, spT.coords);
        for (int j = 0; j < spT.coords; ++j) rhs.at(0, j) = red[j];
        FpMat X;
        if (!fp_solve_left(Tbasis, rhs, X)) return false;
        for (size_t t = 0; t < repsT.size(); ++t) S.at(static_cast<int>(r), static_cast<int>(t)) = X.at(0, static_cast<int>(t));
    }
    return fp_rank(S) == static_cast<int>(repsY.size());
}

} // namespace halg
