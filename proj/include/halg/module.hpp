#pragma once

// Finitely presented modules and their maps.
//
// A module is the cokernel of x -> x*rel on row vectors: generators are the
// columns of the relations matrix, relations its rows.  A right module is
// held as a left module over the opposite ring instance with Side::Right.
// Every map constructed here carries a solve witness that it is well
// defined; exactness certificates are built from public kernel/solve calls
// only, so they can be re-derived independently of any construction path.

#include "halg/matrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace halg {

template <class R>
struct FPModule {
    std::shared_ptr<const R> ring;
    Side side = Side::Left;
    Mat<R> rel; // rows = relations, cols = generators

    FPModule() = default;
    FPModule(std::shared_ptr<const R> rg, Side s, Mat<R> relations)
        : ring(std::move(rg)), side(s), rel(std::move(relations))
    {
        if (rel.ring != ring) throw Error(ErrorKind::MixedRings, "relations over wrong ring");
    }

    int gens() const { return rel.cols; }

    static FPModule free_module(std::shared_ptr<const R> rg, Side s, int n)
    {
        return FPModule(rg, s, Mat<R>(rg, 0, n));
    }
    static FPModule zero_module(std::shared_ptr<const R> rg, Side s)
    {
        return FPModule(rg, s, Mat<R>(rg, 0, 0));
    }

    bool same_ambient(const FPModule& o) const { return ring == o.ring && side == o.side; }
};

template <class R>
void check_same_ambient(const FPModule<R>& a, const FPModule<R>& b)
{
    if (!a.same_ambient(b))
        throw Error(ErrorKind::MixedRings, "modules over different rings or sides");
}

// Is the element given by `row` (1 x gens) zero in M?
template <class R>
bool row_zero_in(const FPModule<R>& M, const Mat<R>& row)
{
    if (row.cols != M.gens()) throw Error(ErrorKind::Internal, "row_zero_in: shape");
    if (row.is_zero()) return true;
    return solve_left(M.rel, row).has_value();
}

template <class R>
bool rows_zero_in(const FPModule<R>& M, const Mat<R>& rows)
{
    if (rows.rows == 0) return true;
    if (rows.is_zero()) return true;
    return solve_left(M.rel, rows).has_value();
}

template <class R>
struct ModuleMap {
    FPModule<R> src, tgt;
    Mat<R> mx;  // src.gens() x tgt.gens()
    Mat<R> wit; // src.rel * mx = wit * tgt.rel

    ModuleMap() = default;
    ModuleMap(FPModule<R> s, FPModule<R> t, Mat<R> matrix)
        : src(std::move(s)), tgt(std::move(t)), mx(std::move(matrix))
    {
        check_same_ambient(src, tgt);
        if (mx.rows != src.gens() || mx.cols != tgt.gens())
            throw Error(ErrorKind::Internal, "module map: matrix shape");
        auto w = solve_left(tgt.rel, mat_mul(src.rel, mx));
        if (!w)
            throw Error(ErrorKind::Internal, "module map: not well defined on relations");
        wit = std::move(*w);
    }

    static ModuleMap identity(const FPModule<R>& M)
    {
        return ModuleMap(M, M, Mat<R>::identity(M.ring, M.gens()));
    }
    static ModuleMap zero_map(const FPModule<R>& s, const FPModule<R>& t)
    {
        return ModuleMap(s, t, Mat<R>(s.ring, s.gens(), t.gens()));
    }
};

template <class R>
ModuleMap<R> compose(const ModuleMap<R>& f, const ModuleMap<R>& g)
{
    if (f.tgt.gens() != g.src.gens() || !f.tgt.same_ambient(g.src))
        throw Error(ErrorKind::Internal, "compose: middle mismatch");
    return ModuleMap<R>(f.src, g.tgt, mat_mul(f.mx, g.mx));
}

template <class R>
bool maps_equal(const ModuleMap<R>& f, const ModuleMap<R>& g)
{
    if (!f.src.same_ambient(g.src) || !f.tgt.same_ambient(g.tgt)) return false;
    if (f.src.gens() != g.src.gens() || f.tgt.gens() != g.tgt.gens()) return false;
    return rows_zero_in(f.tgt, mat_sub(f.mx, g.mx));
}

// ---------------------------------------------------------------------------
// Generator pruning: inclusion-minimal generating subset of the submodule
// generated by the rows of G inside the ambient module with relations Rel.

template <class R>
Mat<R> prune_generators(const Mat<R>& G, const Mat<R>& Rel)
{
    Mat<R> kept(G.ring, 0, G.cols);
    for (int i = 0; i < G.rows; ++i) {
        Mat<R> row = G.row(i);
        auto ambient = Rel.rows ? mat_vstack(kept, Rel) : kept;
        if (ambient.rows > 0 && solve_left(ambient, row).has_value()) continue;
        if (ambient.rows == 0 && row.is_zero()) continue;
        kept = mat_vstack(kept, row);
    }
    return kept;
}

// Rows x with x*G inside the row span of Rel (the relations of the
// submodule generated by G's rows in the ambient module).
template <class R>
Mat<R> relative_syzygies(const Mat<R>& G, const Mat<R>& Rel)
{
    if (Rel.rows == 0) return kernel_left(G);
    Mat<R> K = kernel_left(mat_vstack(G, Rel));
    return prune_generators(mat_cols(K, 0, G.rows), Mat<R>(G.ring, 0, G.rows));
}

// ---------------------------------------------------------------------------
// Kernel, cokernel, image

template <class R>
struct KernelData {
    FPModule<R> module;
    ModuleMap<R> incl;
};

template <class R>
KernelData<R> kernel_module(const ModuleMap<R>& f)
{
    // x in ker f  iff  x*mx lies in the row span of tgt.rel
    Mat<R> gens;
    if (f.tgt.rel.rows == 0) {
        gens = kernel_left(f.mx);
    } else {
        Mat<R> K = kernel_left(mat_vstack(f.mx, f.tgt.rel));
        gens = mat_cols(K, 0, f.src.gens());
    }
    gens = prune_generators(gens, f.src.rel);
    FPModule<R> K(f.src.ring, f.src.side, relative_syzygies(gens, f.src.rel));
    return KernelData<R>{K, ModuleMap<R>(K, f.src, gens)};
}

template <class R>
struct CokernelData {
    FPModule<R> module;
    ModuleMap<R> proj;
};

template <class R>
CokernelData<R> cokernel(const ModuleMap<R>& f)
{
    FPModule<R> C(f.tgt.ring, f.tgt.side, mat_vstack(f.tgt.rel, f.mx));
    return CokernelData<R>{C, ModuleMap<R>(f.tgt, C, Mat<R>::identity(f.tgt.ring, f.tgt.gens()))};
}

template <class R>
struct ImageData {
    FPModule<R> module;
    ModuleMap<R> onto; // src ->> image, identity on generators
    ModuleMap<R> incl; // image -> tgt
};

template <class R>
ImageData<R> image_module(const ModuleMap<R>& f)
{
    FPModule<R> I(f.src.ring, f.src.side, relative_syzygies(f.mx, f.tgt.rel));
    return ImageData<R>{I, ModuleMap<R>(f.src, I, Mat<R>::identity(f.src.ring, f.src.gens())),
                        ModuleMap<R>(I, f.tgt, f.mx)};
}

// ---------------------------------------------------------------------------
// Subquotient: the module generated by the rows of K, with relations the
// syzygies of K plus the expressions of I's rows through K.

template <class R>
FPModule<R> subquotient(const FPModule<R>& ambient, const Mat<R>& K, const Mat<R>& I)
{
    if (K.cols != ambient.gens() || I.cols != ambient.gens())
        throw Error(ErrorKind::Internal, "subquotient: shape");
    Mat<R> syz = relative_syzygies(K, ambient.rel);
    Mat<R> expr(K.ring, 0, K.rows);
    if (I.rows > 0) {
        auto x = ambient.rel.rows ? solve_left_mod(K, ambient.rel, I) : solve_left(K, I);
        if (!x)
            throw Error(ErrorKind::NotContained,
                        "subquotient: inner generators not contained in the span of K");
        expr = *x;
    }
    return FPModule<R>(ambient.ring, ambient.side, mat_vstack(syz, expr));
}

// ---------------------------------------------------------------------------
// Direct sums

template <class R>
struct DirectSumData {
    FPModule<R> module;
    ModuleMap<R> incl1, incl2, proj1, proj2;
};

template <class R>
DirectSumData<R> direct_sum(const FPModule<R>& M, const FPModule<R>& N)
{
    check_same_ambient(M, N);
    FPModule<R> S(M.ring, M.side, mat_block_diag(M.rel, N.rel));
    int gm = M.gens(), gn = N.gens();
    Mat<R> i1(M.ring, gm, gm + gn), i2(M.ring, gn, gm + gn);
    Mat<R> p1(M.ring, gm + gn, gm), p2(M.ring, gm + gn, gn);
    for (int i = 0; i < gm; ++i) { i1.at(i, i) = M.ring->one(); p1.at(i, i) = M.ring->one(); }
    for (int i = 0; i < gn; ++i) { i2.at(i, gm + i) = M.ring->one(); p2.at(gm + i, i) = M.ring->one(); }
    return DirectSumData<R>{S, ModuleMap<R>(M, S, i1), ModuleMap<R>(N, S, i2),
                            ModuleMap<R>(S, M, p1), ModuleMap<R>(S, N, p2)};
}

// ---------------------------------------------------------------------------
// Pullback and pushout

template <class R>
struct PullbackData {
    FPModule<R> module;   // W
    ModuleMap<R> to_x, to_y;
    FPModule<R> sum;      // X (+) Y, W included there
    ModuleMap<R> incl;    // W -> X (+) Y
};

template <class R>
PullbackData<R> pullback(const ModuleMap<R>& f, const ModuleMap<R>& g)
{
    if (!f.tgt.same_ambient(g.tgt) || f.tgt.gens() != g.tgt.gens())
        throw Error(ErrorKind::Internal, "pullback: targets differ");
    auto XY = direct_sum(f.src, g.src);
    Mat<R> diff = mat_vstack(f.mx, mat_neg(g.mx));
    ModuleMap<R> dmap(XY.module, f.tgt, diff);
    auto ker = kernel_module(dmap);
    return PullbackData<R>{ker.module,
                           compose(ker.incl, XY.proj1),
                           compose(ker.incl, XY.proj2),
                           XY.module, ker.incl};
}

template <class R>
struct PushoutData {
    FPModule<R> module; // W
    ModuleMap<R> from_x, from_y;
};

template <class R>
PushoutData<R> pushout(const ModuleMap<R>& f, const ModuleMap<R>& g)
{
    if (!f.src.same_ambient(g.src) || f.src.gens() != g.src.gens())
        throw Error(ErrorKind::Internal, "pushout: sources differ");
    auto XY = direct_sum(f.tgt, g.tgt);
    Mat<R> h = mat_hstack(f.mx, mat_neg(g.mx));
    ModuleMap<R> hmap(f.src, XY.module, h);
    auto cok = cokernel(hmap);
    return PushoutData<R>{cok.module, compose(XY.incl1, cok.proj), compose(XY.incl2, cok.proj)};
}

// ---------------------------------------------------------------------------
// Injectivity / surjectivity / isomorphism checks (witness-based)

template <class R>
bool is_injective(const ModuleMap<R>& f)
{
    auto k = kernel_module(f);
    return k.module.gens() == 0 || rows_zero_in(f.src, k.incl.mx);
}

template <class R>
bool is_surjective(const ModuleMap<R>& f)
{
    auto I = Mat<R>::identity(f.tgt.ring, f.tgt.gens());
    return solve_left_mod(f.mx, f.tgt.rel, I).has_value();
}

// Two-sided inverse found by solving; empty when f is not invertible.
template <class R>
std::optional<ModuleMap<R>> inverse_of(const ModuleMap<R>& f)
{
    auto I_t = Mat<R>::identity(f.tgt.ring, f.tgt.gens());
    auto back = solve_left_mod(f.mx, f.tgt.rel, I_t);
    if (!back) return std::nullopt;
    ModuleMap<R> g(f.tgt, f.src, *back);
    if (!maps_equal(compose(f, g), ModuleMap<R>::identity(f.src))) return std::nullopt;
    if (!maps_equal(compose(g, f), ModuleMap<R>::identity(f.tgt))) return std::nullopt;
    return g;
}

template <class R>
bool is_isomorphism(const ModuleMap<R>& f)
{
    return is_surjective(f) && is_injective(f);
}

// ---------------------------------------------------------------------------
// Short exact sequences with machine-checked certificates

struct SESChecks {
    bool composite_zero = false;
    bool f_injective = false;
    bool g_surjective = false;
    bool ker_g_in_im_f = false;
    bool pass() const { return composite_zero && f_injective && g_surjective && ker_g_in_im_f; }
};

template <class R>
struct ShortExactSequence {
    ModuleMap<R> f; // A -> B
    ModuleMap<R> g; // B -> C
    SESChecks checks;
};

template <class R>
SESChecks certify_ses(const ModuleMap<R>& f, const ModuleMap<R>& g)
{
    SESChecks c;
    c.composite_zero = rows_zero_in(g.tgt, mat_mul(f.mx, g.mx));
    c.f_injective = is_injective(f);
    c.g_surjective = is_surjective(g);
    auto kg = kernel_module(g);
    c.ker_g_in_im_f =
        kg.module.gens() == 0 || solve_left_mod(f.mx, f.tgt.rel, kg.incl.mx).has_value();
    return c;
}

template <class R>
ShortExactSequence<R> make_ses(const ModuleMap<R>& f, const ModuleMap<R>& g)
{
    return ShortExactSequence<R>{f, g, certify_ses(f, g)};
}

// Exactness at the middle of A -f-> B -g-> C (no injectivity/surjectivity).
template <class R>
bool exact_at(const ModuleMap<R>& f, const ModuleMap<R>& g)
{
    if (!rows_zero_in(g.tgt, mat_mul(f.mx, g.mx))) return false;
    auto kg = kernel_module(g);
    return kg.module.gens() == 0 ||
           solve_left_mod(f.mx, f.tgt.rel, kg.incl.mx).has_value();
}

// ---------------------------------------------------------------------------
// Epi splitting: given an epi g: W ->> Y and a section found by solving,
// produce the explicit isomorphism W = ker g (+) Y.

template <class R>
struct SplitData {
    KernelData<R> ker;
    ModuleMap<R> section;   // Y -> W, section of g
    ModuleMap<R> to_sum;    // W -> K (+) Y
    ModuleMap<R> from_sum;  // K (+) Y -> W
    FPModule<R> sum;
};

template <class R>
std::optional<SplitData<R>> split_epi(const ModuleMap<R>& g)
{
    auto sec = solve_left_mod(g.mx, g.tgt.rel, Mat<R>::identity(g.tgt.ring, g.tgt.gens()));
    if (!sec) return std::nullopt;
    ModuleMap<R> s(g.tgt, g.src, *sec);
    auto K = kernel_module(g);
    auto KY = direct_sum(K.module, g.tgt);
    // W -> K (+) Y: w |-> (w - s(g(w)) expressed in K, g(w))
    Mat<R> corr = mat_sub(Mat<R>::identity(g.src.ring, g.src.gens()), mat_mul(g.mx, s.mx));
    auto expr = solve_left_mod(K.incl.mx, g.src.rel, corr);
    if (!expr) return std::nullopt;
    Mat<R> to = mat_hstack(*expr, g.mx);
    Mat<R> from = mat_vstack(K.incl.mx, s.mx);
    SplitData<R> out{K, s, ModuleMap<R>(g.src, KY.module, to),
                     ModuleMap<R>(KY.module, g.src, from), KY.module};
    if (!maps_equal(compose(out.to_sum, out.from_sum), ModuleMap<R>::identity(g.src)))
        return std::nullopt;
    if (!maps_equal(compose(out.from_sum, out.to_sum), ModuleMap<R>::identity(KY.module)))
        return std::nullopt;
    return out;
}

} // namespace halg
