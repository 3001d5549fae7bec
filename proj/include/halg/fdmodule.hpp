#pragma once

// Linear-algebra view of modules over a bound quiver algebra: the flattened
// F_p quotient space with its basis-element actions.  This is the substrate
// for dimensions, tops, socles, projective covers, injective envelopes and
// the vector-space duality  vdual : mod Lambda -> mod Lambda^op.

#include "halg/module.hpp"

#include <vector>

namespace halg {

using QMod = FPModule<QuiverAlgebra>;
using QMap = ModuleMap<QuiverAlgebra>;

// Flattened module: F_p^(gens*D) modulo the flat span of the relation
// submodule, with one action matrix per algebra basis class (row
// convention: coords of c*x are x-coords times act[c]).
struct FlatModule {
    std::shared_ptr<const QuiverAlgebra> ring;
    int gens = 0;
    int dim = 0;
    FpEchelon relspan;
    std::vector<std::pair<int, int>> qcoords; // (generator, basis class) per quotient coord
    std::vector<FpMat> act;                   // one per algebra basis class

    // Flat row vector of a Lambda-row (1 x gens).
    std::vector<uint32_t> flatten(const Mat<QuiverAlgebra>& row) const
    {
        int d = ring->dim();
        std::vector<uint32_t> v(static_cast<size_t>(gens) * d, 0);
        for (int j = 0; j < gens; ++j)
            for (int t = 0; t < d; ++t) v[static_cast<size_t>(j) * d + t] = row.at(0, j)[t];
        return v;
    }

    Mat<QuiverAlgebra> unflatten(const std::vector<uint32_t>& v) const
    {
        int d = ring->dim();
        Mat<QuiverAlgebra> row(ring, 1, gens);
        for (int j = 0; j < gens; ++j) {
            auto e = ring->zero();
            for (int t = 0; t < d; ++t) e[t] = v[static_cast<size_t>(j) * d + t];
            row.at(0, j) = e;
        }
        return row;
    }

    // Quotient coordinates of a flat vector.
    std::vector<uint32_t> coords(const std::vector<uint32_t>& flat) const
    {
        auto res = relspan.reduce(flat);
        std::vector<uint32_t> out(dim, 0);
        for (int k = 0; k < dim; ++k)
            out[k] = res[static_cast<size_t>(qcoords[k].first) * ring->dim() + qcoords[k].second];
        return out;
    }

    std::vector<uint32_t> coords_of_row(const Mat<QuiverAlgebra>& row) const
    {
        return coords(flatten(row));
    }
};

inline FlatModule flatten_module(const QMod& M)
{
    FlatModule F;
    F.ring = M.ring;
    F.gens = M.gens();
    int d = M.ring->dim();
    F.relspan = FpEchelon(M.ring->p(), F.gens * d);
    for (int r = 0; r < M.rel.rows; ++r)
        for (int s = 0; s < d; ++s) {
            std::vector<uint32_t> v(static_cast<size_t>(F.gens) * d, 0);
            for (int j = 0; j < F.gens; ++j) {
                auto prod = M.ring->mul(M.ring->basis_elem(s), M.rel.at(r, j));
                for (int t = 0; t < d; ++t) v[static_cast<size_t>(j) * d + t] = prod[t];
            }
            F.relspan.insert(std::move(v));
        }
    // quotient coordinates = non-pivot flat coordinates
    std::vector<bool> pivot(static_cast<size_t>(F.gens) * d, false);
    for (int c : F.relspan.pivots) pivot[c] = true;
    for (int j = 0; j < F.gens; ++j)
        for (int t = 0; t < d; ++t)
            if (!pivot[static_cast<size_t>(j) * d + t]) F.qcoords.emplace_back(j, t);
    F.dim = static_cast<int>(F.qcoords.size());
    // actions of algebra basis classes
    F.act.reserve(d);
    for (int c = 0; c < d; ++c) {
        FpMat A(M.ring->p(), F.dim, F.dim);
        for (int k = 0; k < F.dim; ++k) {
            auto [j, t] = F.qcoords[k];
            std::vector<uint32_t> v(static_cast<size_t>(F.gens) * d, 0);
            auto prod = M.ring->mul(M.ring->basis_elem(c), M.ring->basis_elem(t));
            for (int u = 0; u < d; ++u) v[static_cast<size_t>(j) * d + u] = prod[u];
            auto q = F.coords(v);
            for (int u = 0; u < F.dim; ++u) A.at(k, u) = q[u];
        }
        F.act.push_back(std::move(A));
    }
    return F;
}

inline int fd_dim(const QMod& M) { return flatten_module(M).dim; }

// Dimension of e_v * M per vertex.
inline std::vector<int> fd_dim_vector(const QMod& M)
{
    FlatModule F = flatten_module(M);
    std::vector<int> out;
    for (int v = 0; v < M.ring->num_vertices(); ++v) {
        int cls = M.ring->core().vertex_class[v];
        out.push_back(fp_rank(F.act[cls]));
    }
    return out;
}

// Radical subspace rad(Lambda) * M as an echelon inside the flat quotient.
inline FpEchelon fd_radical_span(const FlatModule& F)
{
    FpEchelon rad(F.ring->p(), F.dim);
    for (int c : F.ring->core().radical_classes)
        for (int k = 0; k < F.dim; ++k) {
            std::vector<uint32_t> row(F.act[c].a.begin() + static_cast<size_t>(k) * F.dim,
                                      F.act[c].a.begin() + static_cast<size_t>(k + 1) * F.dim);
            rad.insert(std::move(row));
        }
    return rad;
}

// Socle basis: common kernel of all radical actions, as quotient coords.
inline FpMat fd_socle(const FlatModule& F)
{
    const auto& radc = F.ring->core().radical_classes;
    if (radc.empty()) return FpMat::identity(F.ring->p(), F.dim);
    FpMat stacked(F.ring->p(), F.dim, F.dim * static_cast<int>(radc.size()));
    for (size_t a = 0; a < radc.size(); ++a)
        for (int i = 0; i < F.dim; ++i)
            for (int j = 0; j < F.dim; ++j)
                stacked.at(i, static_cast<int>(a) * F.dim + j) = F.act[radc[a]].at(i, j);
    return fp_left_kernel(stacked);
}

// Minimal generators: flat vectors, vertex-homogeneous, whose classes form a
// basis of top(M) = M / rad M.  Returned as (vertex, Lambda-row) pairs.
struct TopGenerators {
    std::vector<int> vertex;
    std::vector<Mat<QuiverAlgebra>> rows;
};

inline TopGenerators fd_top_generators(const QMod& M, const FlatModule& F)
{
    TopGenerators out;
    FpEchelon span = fd_radical_span(F);
    int d = M.ring->dim();
    for (int v = 0; v < M.ring->num_vertices(); ++v) {
        int cls = M.ring->core().vertex_class[v];
        for (int k = 0; k < F.dim; ++k) {
            std::vector<uint32_t> unit(F.dim, 0);
            unit[k] = 1;
            // project to the vertex component, then test mod rad + kept
            std::vector<uint32_t> w(F.dim, 0);
            for (int j = 0; j < F.dim; ++j)
                for (int t = 0; t < F.dim; ++t)
                    w[t] = fp_add(w[t], fp_mul(unit[j], F.act[cls].at(j, t), F.ring->p()),
                                  F.ring->p());
            if (!span.insert(w)) continue;
            // lift the quotient vector back to a flat Lambda-row
            std::vector<uint32_t> flat(static_cast<size_t>(F.gens) * d, 0);
            for (int q = 0; q < F.dim; ++q)
                flat[static_cast<size_t>(F.qcoords[q].first) * d + F.qcoords[q].second] = w[q];
            out.vertex.push_back(v);
            out.rows.push_back(F.unflatten(flat));
        }
    }
    return out;
}

// Indecomposable projective Lambda*e_v as a one-generator module.
inline QMod fd_projective_indec(std::shared_ptr<const QuiverAlgebra> rg, int v)
{
    Mat<QuiverAlgebra> col(rg, 1, 1);
    col.at(0, 0) = rg->idempotent(v);
    return QMod(rg, Side::Left, kernel_left(col));
}

struct CoverData {
    QMod P;
    QMap epi;
    std::vector<int> vertices; // cover multiset, one entry per summand
};

// Projective cover via the top: P = (+) Lambda*e_v, one summand per top
// basis vector, mapping onto the chosen lifts.
inline CoverData fd_projective_cover(const QMod& M)
{
    FlatModule F = flatten_module(M);
    TopGenerators tops = fd_top_generators(M, F);
    QMod P = QMod::zero_module(M.ring, M.side);
    for (int v : tops.vertex) {
        QMod PV = fd_projective_indec(M.ring, v);
        PV.side = M.side;
        P = direct_sum(P, PV).module;
    }
    Mat<QuiverAlgebra> mx(M.ring, static_cast<int>(tops.rows.size()), M.gens());
    for (size_t i = 0; i < tops.rows.size(); ++i)
        for (int j = 0; j < M.gens(); ++j) mx.at(static_cast<int>(i), j) = tops.rows[i].at(0, j);
    QMap epi(P, M, mx);
    if (!is_surjective(epi))
        throw Error(ErrorKind::Internal, "projective cover failed to surject");
    return CoverData{P, epi, tops.vertex};
}

inline bool fd_is_projective(const QMod& M)
{
    FlatModule F = flatten_module(M);
    if (F.dim == 0) return true;
    CoverData c = fd_projective_cover(M);
    return fd_dim(c.P) == F.dim;
}

// ---------------------------------------------------------------------------
// Vector-space duality

struct VdualData {
    QMod module; // over the opposite ring, flipped side
    // generator k of the dual is the functional dual to quotient coord k of
    // the source; kept so maps can be transported.
    FlatModule source_flat;
};

inline VdualData vdual(const QMod& M)
{
    FlatModule F = flatten_module(M);
    auto op = M.ring->opposite();
    int d = M.ring->dim();
    // relations: kernel of evaluation (Lambda^op)^(1 x dim) -> V*, where the
    // action of basis class s on the dual is act[s] transposed.
    FpMat Phi(M.ring->p(), F.dim * d, F.dim);
    for (int k = 0; k < F.dim; ++k)
        for (int s = 0; s < d; ++s)
            for (int q = 0; q < F.dim; ++q)
                Phi.at(k * d + s, q) = F.act[s].at(q, k);
    FpMat K = fp_left_kernel(Phi);
    Mat<QuiverAlgebra> rel = detail::unflatten_rows(op, K, F.dim);
    rel = prune_generators(rel, Mat<QuiverAlgebra>(op, 0, F.dim));
    return VdualData{QMod(op, flip(M.side), rel), std::move(F)};
}

// Contravariant transport of a map through vdual.
inline QMap vdual_map(const QMap& f, const VdualData& dsrc, const VdualData& dtgt)
{
    // flat matrix of f between quotient spaces
    const FlatModule& FM = dsrc.source_flat;
    const FlatModule& FN = dtgt.source_flat;
    FpMat flat(f.src.ring->p(), FM.dim, FN.dim);
    for (int k = 0; k < FM.dim; ++k) {
        auto [i, s] = FM.qcoords[k];
        Mat<QuiverAlgebra> row(f.src.ring, 1, f.tgt.gens());
        for (int j = 0; j < f.tgt.gens(); ++j)
            row.at(0, j) = f.src.ring->mul(f.src.ring->basis_elem(s), f.mx.at(i, j));
        auto q = FN.coords_of_row(row);
        for (int u = 0; u < FN.dim; ++u) flat.at(k, u) = q[u];
    }
    // dual map: vdual(tgt) -> vdual(src), scalar entries = transpose
    auto op = f.src.ring->opposite();
    Mat<QuiverAlgebra> mx(op, FN.dim, FM.dim);
    for (int a = 0; a < FN.dim; ++a)
        for (int b = 0; b < FM.dim; ++b) mx.at(a, b) = op->scalar(flat.at(b, a));
    return QMap(dtgt.module, dsrc.module, mx);
}

// Canonical isomorphism M -> vdual(vdual(M)).
inline QMap ddual_iso(const QMod& M, const VdualData& d1, const VdualData& d2)
{
    // d1 = vdual(M), d2 = vdual(d1.module).  Generator j of d2.module is the
    // functional dual to quotient coord j of d1.module's flat space; that
    // coord is the class of an ambient unit (k_j, s_j), i.e. the functional
    // x |-> coords(b_{s_j} * x)_{k_j} on M.
    const FlatModule& FM = d1.source_flat;        // flat view of M
    const FlatModule& FD = d2.source_flat;        // flat view of vdual(M)
    Mat<QuiverAlgebra> mx(M.ring, M.gens(), FD.dim);
    for (int i = 0; i < M.gens(); ++i) {
        Mat<QuiverAlgebra> unit(M.ring, 1, M.gens());
        unit.at(0, i) = M.ring->one();
        auto xc = FM.coords_of_row(unit);
        for (int j = 0; j < FD.dim; ++j) {
            auto [k, s] = FD.qcoords[j];
            // evaluate the j-th dual-basis functional at x
            uint32_t val = 0;
            for (int q = 0; q < FM.dim; ++q)
                val = fp_add(val, fp_mul(xc[q], FM.act[s].at(q, k), M.ring->p()), M.ring->p());
            mx.at(i, j) = M.ring->scalar(val);
        }
    }
    return QMap(M, d2.module, mx);
}

// ---------------------------------------------------------------------------
// Injective envelopes (right modules, i.e. Side::Right over the op ring of
// the module's own ring handle): I = vdual(projective cover(vdual(M))).

struct EnvelopeData {
    QMod I;
    QMap mono;
    bool essential = false; // socle of I meets the image exactly
};

inline EnvelopeData fd_injective_envelope(const QMod& M)
{
    VdualData dm = vdual(M);            // left module over ring->opposite()
    CoverData cov = fd_projective_cover(dm.module);
    VdualData dP = vdual(cov.P);        // back over M's ring and side
    VdualData dd = vdual(dm.module);
    QMap dualized = vdual_map(cov.epi, dP, dd); // vdual(dm.module) -> vdual(P)
    QMap mono = compose(ddual_iso(M, dm, dd), dualized);
    EnvelopeData out{dP.module, mono, false};

    // essentiality: mono injective, socles match through it
    FlatModule FI = flatten_module(out.I);
    FlatModule FMf = flatten_module(M);
    FpMat socI = fd_socle(FI);
    FpMat socM = fd_socle(FMf);
    bool inj = is_injective(mono);
    // image span of mono inside I's flat quotient
    FpEchelon img(M.ring->p(), FI.dim);
    int d = M.ring->dim();
    for (int i = 0; i < M.gens(); ++i)
        for (int s = 0; s < d; ++s) {
            Mat<QuiverAlgebra> row(M.ring, 1, out.I.gens());
            for (int j = 0; j < out.I.gens(); ++j)
                row.at(0, j) = M.ring->mul(M.ring->basis_elem(s), mono.mx.at(i, j));
            img.insert(FI.coords_of_row(row));
        }
    bool soc_in_image = true;
    for (int i = 0; i < socI.rows; ++i) {
        std::vector<uint32_t> v(socI.a.begin() + static_cast<size_t>(i) * socI.cols,
                                socI.a.begin() + static_cast<size_t>(i + 1) * socI.cols);
        if (!img.contains(v)) { soc_in_image = false; break; }
    }
    out.essential = inj && soc_in_image && socI.rows == socM.rows;
    return out;
}

// ---------------------------------------------------------------------------
// Minimal presentation over the fd backend: generators lift a basis of the
// top, relations are the kernel of the evaluation map.

struct MinimalPresentation {
    QMod module;
    QMap to_min;   // M -> module
    QMap from_min; // module -> M
};

inline MinimalPresentation fd_minimal_presentation(const QMod& M)
{
    FlatModule F = flatten_module(M);
    TopGenerators tops = fd_top_generators(M, F);
    int t = static_cast<int>(tops.rows.size());
    int d = M.ring->dim();
    Mat<QuiverAlgebra> U(M.ring, t, M.gens());
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < M.gens(); ++j) U.at(i, j) = tops.rows[i].at(0, j);
    // relations: flat kernel of (x_1..x_t) -> sum x_i * u_i
    FpMat Phi(M.ring->p(), t * d, F.dim);
    for (int i = 0; i < t; ++i)
        for (int s = 0; s < d; ++s) {
            Mat<QuiverAlgebra> row(M.ring, 1, M.gens());
            for (int j = 0; j < M.gens(); ++j)
                row.at(0, j) = M.ring->mul(M.ring->basis_elem(s), U.at(i, j));
            auto q = F.coords_of_row(row);
            for (int u = 0; u < F.dim; ++u) Phi.at(i * d + s, u) = q[u];
        }
    FpMat K = fp_left_kernel(Phi);
    Mat<QuiverAlgebra> rel = detail::unflatten_rows(M.ring, K, t);
    rel = prune_generators(rel, Mat<QuiverAlgebra>(M.ring, 0, t));
    QMod Mmin(M.ring, M.side, rel);
    QMap from_min(Mmin, M, U);
    auto back = solve_left_mod(U, M.rel, Mat<QuiverAlgebra>::identity(M.ring, M.gens()));
    if (!back) throw Error(ErrorKind::Internal, "minimal presentation: generators do not span");
    QMap to_min(M, Mmin, *back);
    return MinimalPresentation{Mmin, to_min, from_min};
}

} // namespace halg
