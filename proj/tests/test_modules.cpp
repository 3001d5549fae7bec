#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"

#include <random>

using namespace halg;
using namespace halg_test;

TEST_CASE("kernel_module: pinned examples")
{
    auto Z = ZRing::instance();
    SUBCASE("kernel of the identity is zero") {
        auto M = zmod(2, {{2, 0}});
        auto k = kernel_module(ModuleMap<ZRing>::identity(M));
        CHECK(is_zero(k.module));
    }
    SUBCASE("kernel of Z ->> Z/4 is 4Z, free of rank 1") {
        auto Zfree = FPModule<ZRing>::free_module(Z, Side::Left, 1);
        auto Z4 = z_cyclic(4);
        ModuleMap<ZRing> f(Zfree, Z4, Mat<ZRing>::identity(Z, 1));
        auto k = kernel_module(f);
        auto d = canonical_decomposition(k.module);
        CHECK(d.rank == 1);
        CHECK(d.factors.empty());
        CHECK(is_injective(k.incl));
    }
    SUBCASE("Evans-Griffith comparison kernel over A_2 has dimension 2") {
        auto A = a2_f2();
        auto S1 = simple_at(A, 0);
        auto P1 = fd_projective_indec(A, 0);
        auto sum = direct_sum(S1, P1);
        // (id, cover): S_1 (+) P_1 -> S_1
        auto cover = fd_projective_cover(S1);
        Mat<QuiverAlgebra> mx(A, sum.module.gens(), 1);
        mx.at(0, 0) = A->one();
        for (int i = 0; i < P1.gens(); ++i) mx.at(1 + i, 0) = cover.epi.mx.at(i, 0);
        ModuleMap<QuiverAlgebra> f(sum.module, S1, mx);
        auto k = kernel_module(f);
        CHECK(fd_dim(k.module) == 2);
    }
}

TEST_CASE("cokernel: pinned examples")
{
    auto Z = ZRing::instance();
    SUBCASE("cokernel of a surjection is zero") {
        auto M = z_cyclic(6);
        auto c = cokernel(ModuleMap<ZRing>::identity(M));
        CHECK(is_zero(c.module));
    }
    SUBCASE("coker(2: Z -> Z) = Z/2") {
        auto F = FPModule<ZRing>::free_module(Z, Side::Left, 1);
        Mat<ZRing> two(Z, 1, 1);
        two.at(0, 0) = 2;
        auto c = cokernel(ModuleMap<ZRing>(F, F, two));
        CHECK(canonical_decomposition(c.module) ==
              canonical_decomposition(z_cyclic(2)));
    }
    SUBCASE("coker(rad P_1 -> P_1) is the simple top over A_2") {
        auto A = a2_f2();
        auto P1 = fd_projective_indec(A, 0);
        // rad P_1 is generated by a * e
        Mat<QuiverAlgebra> g(A, 1, 1);
        g.at(0, 0) = A->arrow(0);
        QMod rad(A, Side::Left, relative_syzygies(g, P1.rel));
        ModuleMap<QuiverAlgebra> inc(rad, P1, g);
        auto c = cokernel(inc);
        CHECK(fd_dim(c.module) == 1);
        CHECK(fd_dim_vector(c.module) == std::vector<int>{1, 0});
    }
}

TEST_CASE("pullback: pinned examples and universal property")
{
    auto Z = ZRing::instance();
    SUBCASE("pullback along the identity recovers the other leg") {
        auto M = zmod(2, {{2, 0}});
        auto N = z_cyclic(2);
        Mat<ZRing> fm(Z, 2, 1);
        fm.at(0, 0) = 1;
        ModuleMap<ZRing> f(M, N, fm);
        auto pb = pullback(f, ModuleMap<ZRing>::identity(N));
        CHECK(invariants_match(minimal_presentation(pb.module), minimal_presentation(M)));
    }
    SUBCASE("pullback of two surjections Z ->> Z/2 is Z (+) Z") {
        auto F = FPModule<ZRing>::free_module(Z, Side::Left, 1);
        auto Z2 = z_cyclic(2);
        ModuleMap<ZRing> f(F, Z2, Mat<ZRing>::identity(Z, 1));
        auto pb = pullback(f, f);
        auto d = canonical_decomposition(pb.module);
        CHECK(d.rank == 2);
        CHECK(d.factors.empty());
    }
    SUBCASE("universal factorization on a random cone") {
        std::mt19937 rng(31);
        std::uniform_int_distribution<int> gd(1, 3), val(-2, 2);
        for (int t = 0; t < 10; ++t) {
            auto X = FPModule<ZRing>::free_module(Z, Side::Left, gd(rng));
            auto Zt = z_cyclic(4);
            Mat<ZRing> fm(Z, X.gens(), 1);
            for (int i = 0; i < X.gens(); ++i) fm.at(i, 0) = val(rng);
            ModuleMap<ZRing> f(X, Zt, fm);
            auto F1 = FPModule<ZRing>::free_module(Z, Side::Left, 1);
            ModuleMap<ZRing> g(F1, Zt, Mat<ZRing>::identity(Z, 1));
            auto pb = pullback(f, g);
            // cone: T = X with q1 = id, q2 a lift of f through g
            auto lift = solve_left_mod(g.mx, Zt.rel, f.mx);
            REQUIRE(lift.has_value());
            Mat<ZRing> cone = mat_hstack(Mat<ZRing>::identity(Z, X.gens()), *lift);
            auto u = solve_left_mod(pb.incl.mx, pb.sum.rel, cone);
            REQUIRE(u.has_value());
            ModuleMap<ZRing> umap(X, pb.module, *u);
            CHECK(maps_equal(compose(umap, pb.to_x), ModuleMap<ZRing>::identity(X)));
        }
    }
    SUBCASE("middle row splits when one leg is a projective cover of the base") {
        // pullback of g: free ->> Z/2 along f: Z(=M**) ->> Z/2: W = M (+) P
        auto F = FPModule<ZRing>::free_module(Z, Side::Left, 1);
        auto Z2 = z_cyclic(2);
        ModuleMap<ZRing> f(F, Z2, Mat<ZRing>::identity(Z, 1));
        auto pb = pullback(f, f);
        auto sp = split_epi(pb.to_y);
        REQUIRE(sp.has_value());
        CHECK(invariants_match(minimal_presentation(sp->sum),
                               minimal_presentation(pb.module)));
    }
}

TEST_CASE("pushout: pinned examples")
{
    auto Z = ZRing::instance();
    SUBCASE("pushout along the identity recovers the other leg") {
        auto M = z_cyclic(4);
        auto N = z_cyclic(2);
        Mat<ZRing> fm(Z, 1, 1);
        fm.at(0, 0) = 1;
        ModuleMap<ZRing> f(M, N, fm);
        auto po = pushout(f, ModuleMap<ZRing>::identity(M));
        CHECK(invariants_match(minimal_presentation(po.module), minimal_presentation(N)));
    }
    SUBCASE("pushout of x2 against the zero map is Z/2") {
        auto F = FPModule<ZRing>::free_module(Z, Side::Left, 1);
        auto O = FPModule<ZRing>::zero_module(Z, Side::Left);
        Mat<ZRing> two(Z, 1, 1);
        two.at(0, 0) = 2;
        ModuleMap<ZRing> f(F, F, two);
        ModuleMap<ZRing> g(F, O, Mat<ZRing>(Z, 1, 0));
        auto po = pushout(f, g);
        CHECK(canonical_decomposition(po.module) == canonical_decomposition(z_cyclic(2)));
    }
    SUBCASE("square commutes") {
        auto M = zmod(2, {{2, 0}});
        Mat<ZRing> fm(Z, 2, 1);
        fm.at(0, 0) = 2;
        auto N = z_cyclic(4);
        ModuleMap<ZRing> f(M, N, fm);
        Mat<ZRing> gm(Z, 2, 2);
        gm.at(0, 0) = 1;
        gm.at(1, 1) = 2;
        ModuleMap<ZRing> g(M, zmod(2, {{2, 0}, {0, 8}}), gm);
        auto po = pushout(f, g);
        CHECK(maps_equal(compose(f, po.from_x), compose(g, po.from_y)));
    }
}

TEST_CASE("subquotient: pinned examples")
{
    auto Z = ZRing::instance();
    auto F1 = FPModule<ZRing>::free_module(Z, Side::Left, 1);
    SUBCASE("K = I gives the zero module") {
        Mat<ZRing> K(Z, 1, 1);
        K.at(0, 0) = 1;
        CHECK(is_zero(subquotient(F1, K, K)));
    }
    SUBCASE("Z picked over 2Z gives Z/2") {
        Mat<ZRing> K(Z, 1, 1), I(Z, 1, 1);
        K.at(0, 0) = 1;
        I.at(0, 0) = 2;
        CHECK(canonical_decomposition(subquotient(F1, K, I)) ==
              canonical_decomposition(z_cyclic(2)));
    }
    SUBCASE("rank-2 sublattice of Z^2 modulo one generator") {
        auto F2 = FPModule<ZRing>::free_module(Z, Side::Left, 2);
        Mat<ZRing> K(Z, 2, 2), I(Z, 1, 2);
        K.at(0, 0) = 2;
        K.at(1, 1) = 3;
        I.at(0, 0) = 2;
        auto Q = subquotient(F2, K, I);
        auto d = canonical_decomposition(Q);
        CHECK(d.rank == 1);
        CHECK(d.factors.empty());
    }
    SUBCASE("NotContained is rejected") {
        Mat<ZRing> K(Z, 1, 1), I(Z, 1, 1);
        K.at(0, 0) = 2;
        I.at(0, 0) = 1;
        CHECK_THROWS_AS(subquotient(F1, K, I), Error);
    }
}

TEST_CASE("direct sum, zero and projectivity tests")
{
    auto Z = ZRing::instance();
    SUBCASE("zero (+) M is M after minimal presentation") {
        auto M = zmod(2, {{2, 0}});
        auto O = FPModule<ZRing>::zero_module(Z, Side::Left);
        auto S = direct_sum(O, M).module;
        CHECK(invariants_match(minimal_presentation(S), minimal_presentation(M)));
    }
    SUBCASE("Z/2 is not projective, the regular module is") {
        CHECK(!is_projective(z_cyclic(2)));
        auto L = f2x2();
        CHECK(is_projective(QMod::free_module(L, Side::Left, 1)));
        CHECK(!is_projective(loop_simple(L)));
    }
    SUBCASE("zero tests") {
        CHECK(is_zero(z_cyclic(1)));
        CHECK(!is_zero(z_cyclic(2)));
        CHECK(is_zero(FPModule<ZRing>::zero_module(Z, Side::Left)));
    }
}

TEST_CASE("minimal presentation preserves the isomorphism class")
{
    std::mt19937 rng(57);
    for (int t = 0; t < 25; ++t) {
        auto M = random_zmodule(rng);
        auto mp = minimal_presentation_data(M);
        CHECK(canonical_decomposition(M) == canonical_decomposition(mp.module));
        CHECK(maps_equal(compose(mp.to_min, mp.from_min), ModuleMap<ZRing>::identity(M)));
        CHECK(maps_equal(compose(mp.from_min, mp.to_min),
                         ModuleMap<ZRing>::identity(mp.module)));
        // invariant under stacking redundant relations
        if (M.rel.rows > 0) {
            Mat<ZRing> dup = mat_vstack(M.rel, M.rel.row(0));
            FPModule<ZRing> M2(M.ring, M.side, dup);
            CHECK(canonical_decomposition(M2) == canonical_decomposition(M));
        }
    }
    auto A = a2_f2();
    std::mt19937 rng2(58);
    for (int t = 0; t < 25; ++t) {
        auto M = random_qmodule(A, rng2);
        auto mp = minimal_presentation_data(M);
        CHECK(fd_dim(M) == fd_dim(mp.module));
        CHECK(fd_dim_vector(M) == fd_dim_vector(mp.module));
        CHECK(maps_equal(compose(mp.to_min, mp.from_min), QMap::identity(M)));
        CHECK(maps_equal(compose(mp.from_min, mp.to_min), QMap::identity(mp.module)));
    }
}

TEST_CASE("short exact sequence certificates re-verify from scratch")
{
    auto Z = ZRing::instance();
    // 0 -> Z -> Z (+) Z/2... built as kernel/cokernel pair of a map
    auto M = zmod(2, {{2, 0}});
    auto ev = eval_map(M);
    auto ker = kernel_module(ev.sigma);
    auto img = image_module(ev.sigma);
    auto ses = make_ses(ker.incl, img.onto);
    CHECK(ses.checks.pass());
    // re-verify with nothing but the maps
    auto again = certify_ses(ses.f, ses.g);
    CHECK(again.pass());
    // kernel-cokernel composite is exact at the middle
    std::mt19937 rng(91);
    std::uniform_int_distribution<int> val(-3, 3), gd(1, 3);
    for (int t = 0; t < 10; ++t) {
        // maps out of a free module are always well defined
        auto X = FPModule<ZRing>::free_module(Z, Side::Left, gd(rng));
        auto N = z_cyclic(6);
        Mat<ZRing> fm(Z, X.gens(), 1);
        for (int i = 0; i < X.gens(); ++i) fm.at(i, 0) = val(rng);
        ModuleMap<ZRing> f(X, N, fm);
        auto k = kernel_module(f);
        auto im = image_module(f);
        CHECK(exact_at(k.incl, im.onto));
    }
}

TEST_CASE("side bookkeeping: duals flip, double duals restore")
{
    auto A = a2_f2();
    auto S1 = simple_at(A, 0);
    CHECK(S1.side == Side::Left);
    auto d = dual_module(S1);
    CHECK(d.dual.side == Side::Right);
    CHECK(d.dual.ring.get() == A->opposite().get());
    auto dd = dual_module(d.dual);
    CHECK(dd.dual.side == Side::Left);
    CHECK(dd.dual.ring.get() == A.get());
    // mixed rings and mixed sides are rejected
    auto L = f2x2();
    auto SL = loop_simple(L);
    CHECK_THROWS_AS(direct_sum(S1, d.dual), Error);
    CHECK_THROWS_AS(ModuleMap<QuiverAlgebra>(S1, SL, Mat<QuiverAlgebra>(A, 1, 1)), Error);
}

TEST_CASE("pushout universal factorization on random cocones")
{
    auto Z = ZRing::instance();
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> val(-2, 2);
    for (int t = 0; t < 10; ++t) {
        auto Zsrc = FPModule<ZRing>::free_module(Z, Side::Left, 1);
        auto X = z_cyclic(4);
        auto Y = z_cyclic(6);
        Mat<ZRing> fm(Z, 1, 1), gm(Z, 1, 1);
        fm.at(0, 0) = val(rng);
        gm.at(0, 0) = val(rng);
        ModuleMap<ZRing> f(Zsrc, X, fm), g(Zsrc, Y, gm);
        auto po = pushout(f, g);
        // cocone: q1: X -> Z/2, q2: Y -> Z/2 with q1 f = q2 g
        auto C = z_cyclic(2);
        Mat<ZRing> q1(Z, 1, 1), q2(Z, 1, 1);
        q1.at(0, 0) = fm.at(0, 0); // then q1 f = f^2 = q2 g with q2 = f*g/g... use symmetric cocone
        q2.at(0, 0) = gm.at(0, 0);
        // only use it when it actually commutes in Z/2
        Mat<ZRing> lhs = mat_mul(fm, q1), rhs = mat_mul(gm, q2);
        if (!rows_zero_in(C, mat_sub(lhs, rhs))) continue;
        ModuleMap<ZRing> c1(X, C, q1), c2(Y, C, q2);
        // the mediating map is defined on the pushout's generators directly;
        // the constructor certifies it respects the pushout relations
        ModuleMap<ZRing> umap(po.module, C, mat_vstack(q1, q2));
        CHECK(maps_equal(compose(po.from_x, umap), c1));
        CHECK(maps_equal(compose(po.from_y, umap), c2));
    }
}
