#pragma once

// Shared fixture rings and modules for the test suites.

#include "halg/halg.hpp"

#include <random>

namespace halg_test {

using namespace halg;

inline std::shared_ptr<const QuiverAlgebra> a2_f2()
{
    static auto alg = [] {
        QuiverSpec s;
        s.p = 2;
        s.vertices = {"1", "2"};
        s.arrows = {{"a", 0, 1}};
        return QuiverAlgebra::build(s);
    }();
    return alg;
}

inline std::shared_ptr<const QuiverAlgebra> loop_algebra(uint32_t p, int power)
{
    QuiverSpec s;
    s.p = p;
    s.vertices = {"1"};
    s.arrows = {{"x", 0, 0}};
    std::string rel = "x";
    for (int i = 1; i < power; ++i) rel += "*x";
    s.relations = {rel};
    return QuiverAlgebra::build(s);
}

inline std::shared_ptr<const QuiverAlgebra> f2x2()
{
    static auto alg = loop_algebra(2, 2);
    return alg;
}

inline std::shared_ptr<const QuiverAlgebra> f3x3()
{
    static auto alg = loop_algebra(3, 3);
    return alg;
}

inline std::shared_ptr<const QuiverAlgebra> semisimple2()
{
    static auto alg = [] {
        QuiverSpec s;
        s.p = 2;
        s.vertices = {"1", "2"};
        return QuiverAlgebra::build(s);
    }();
    return alg;
}

// --- integer modules

inline FPModule<ZRing> zmod(int gens, std::vector<std::vector<long>> rows)
{
    auto Z = ZRing::instance();
    Mat<ZRing> rel(Z, static_cast<int>(rows.size()), gens);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < gens; ++j) rel.at(static_cast<int>(i), j) = rows[i][j];
    return FPModule<ZRing>(Z, Side::Left, rel);
}

inline FPModule<ZRing> z_cyclic(long n) { return zmod(1, {{n}}); }

// --- fd modules

inline QMod simple_at(const std::shared_ptr<const QuiverAlgebra>& A, int v,
                      Side side = Side::Left)
{
    auto inst = side == Side::Left ? A : A->opposite();
    Mat<QuiverAlgebra> col(inst, 1, 1);
    col.at(0, 0) = inst->idempotent(v);
    Mat<QuiverAlgebra> rel = kernel_left(col);
    for (int c : inst->core().radical_classes) {
        Mat<QuiverAlgebra> row(inst, 1, 1);
        row.at(0, 0) = inst->basis_elem(c);
        rel = mat_vstack(rel, row);
    }
    return QMod(inst, side, basis_rows(rel));
}

inline QMod loop_simple(const std::shared_ptr<const QuiverAlgebra>& A, Side side = Side::Left)
{
    auto inst = side == Side::Left ? A : A->opposite();
    Mat<QuiverAlgebra> rel(inst, 1, 1);
    rel.at(0, 0) = inst->arrow(0);
    return QMod(inst, side, rel);
}

// --- random presentations (fixed-seed generators)

inline FPModule<ZRing> random_zmodule(std::mt19937& rng, int max_dim = 4, int max_entry = 4)
{
    std::uniform_int_distribution<int> dim(1, max_dim), val(-max_entry, max_entry);
    int r = dim(rng), g = dim(rng);
    auto Z = ZRing::instance();
    Mat<ZRing> rel(Z, r, g);
    for (auto& x : rel.e) x = val(rng);
    return FPModule<ZRing>(Z, Side::Left, rel);
}

inline QMod random_qmodule(const std::shared_ptr<const QuiverAlgebra>& A, std::mt19937& rng,
                           int max_gens = 3)
{
    std::uniform_int_distribution<int> gd(1, max_gens), rd(0, max_gens);
    std::uniform_int_distribution<uint32_t> cd(0, A->p() - 1);
    int g = gd(rng), r = rd(rng);
    Mat<QuiverAlgebra> rel(A, r, g);
    for (auto& x : rel.e) {
        auto e = A->zero();
        for (int t = 0; t < A->dim(); ++t) e[t] = cd(rng);
        x = e;
    }
    return QMod(A, Side::Left, rel);
}

} // namespace halg_test
