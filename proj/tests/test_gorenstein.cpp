#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"

using namespace halg;
using namespace halg_test;

TEST_CASE("flat view: dimensions, tops, socles")
{
    auto A = a2_f2();
    auto P1 = fd_projective_indec(A, 0);
    auto P2 = fd_projective_indec(A, 1);
    CHECK(fd_dim(P1) == 2);
    CHECK(fd_dim(P2) == 1);
    CHECK(fd_dim_vector(P1) == std::vector<int>{1, 1});
    auto F1 = flatten_module(P1);
    CHECK(fd_socle(F1).rows == 1);
    auto tops = fd_top_generators(P1, F1);
    CHECK(tops.vertex == std::vector<int>{0});
    // dim P >= dim M with equality iff projective
    auto S1 = simple_at(A, 0);
    auto cov = fd_projective_cover(S1);
    CHECK(fd_dim(cov.P) == 2);
    CHECK(fd_dim(cov.P) > fd_dim(S1));
    CHECK(!fd_is_projective(S1));
    CHECK(fd_is_projective(P1));
    auto covP = fd_projective_cover(P1);
    CHECK(fd_dim(covP.P) == fd_dim(P1));
}

TEST_CASE("projective covers: pinned examples")
{
    SUBCASE("cover of the simple top of P_1 over A_2 is P_1") {
        auto A = a2_f2();
        auto cov = fd_projective_cover(simple_at(A, 0));
        CHECK(fd_dim(cov.P) == 2);
        CHECK(cov.vertices == std::vector<int>{0});
        CHECK(is_surjective(cov.epi));
    }
    SUBCASE("cover of a projective is itself") {
        auto A = a2_f2();
        auto P1 = fd_projective_indec(A, 0);
        auto cov = fd_projective_cover(P1);
        CHECK(fd_dim(cov.P) == fd_dim(P1));
        CHECK(is_isomorphism(cov.epi));
    }
    SUBCASE("local algebra has one projective") {
        auto L = f2x2();
        auto cov = fd_projective_cover(loop_simple(L));
        CHECK(fd_dim(cov.P) == 2);
    }
}

TEST_CASE("vdual is a duality")
{
    for (auto A : {a2_f2(), f2x2(), f3x3()}) {
        std::vector<QMod> mods = {simple_at(A, 0), fd_projective_indec(A, 0),
                                  QMod::free_module(A, Side::Left, 1)};
        for (const auto& M : mods) {
            auto d1 = vdual(M);
            CHECK(fd_dim(d1.module) == fd_dim(M));
            CHECK(d1.module.side == Side::Right);
            auto d2 = vdual(d1.module);
            CHECK(fd_dim(d2.module) == fd_dim(M));
            auto dd = ddual_iso(M, d1, d2);
            CHECK(is_isomorphism(dd));
        }
    }
}

TEST_CASE("injective envelopes: pinned examples")
{
    SUBCASE("simple right module S_1 over A_2 has a 2-dimensional envelope") {
        auto A = a2_f2();
        auto S1r = simple_at(A, 0, Side::Right);
        auto env = fd_injective_envelope(S1r);
        CHECK(env.essential);
        CHECK(fd_dim(env.I) == 2);
        // socles match through the embedding
        auto FI = flatten_module(env.I);
        auto FM = flatten_module(S1r);
        CHECK(fd_socle(FI).rows == fd_socle(FM).rows);
    }
    SUBCASE("already injective: envelope is an isomorphism") {
        auto L = f2x2();
        auto F = QMod::free_module(L->opposite(), Side::Right, 1);
        auto env = fd_injective_envelope(F);
        CHECK(env.essential);
        CHECK(fd_dim(env.I) == fd_dim(F));
        CHECK(is_isomorphism(env.mono));
    }
    SUBCASE("regular module of the loop algebra is self-injective") {
        auto L = f2x2();
        auto reg = QMod::free_module(L->opposite(), Side::Right, 1);
        auto env = fd_injective_envelope(reg);
        CHECK(fd_dim(env.I) == 2);
        CHECK(is_isomorphism(env.mono));
    }
}

TEST_CASE("minimal injective resolutions: pinned examples")
{
    SUBCASE("F_2[x]/(x^2): I_1 regular, the rest zero") {
        auto mir = min_injective_resolution(f2x2(), 4);
        CHECK(fd_dim(mir.terms[0]) == 2);
        for (int i = 1; i < 4; ++i) CHECK(is_zero(mir.terms[i]));
        CHECK(mir.essential[0]);
    }
    SUBCASE("semisimple: I_1 regular, the rest zero") {
        auto mir = min_injective_resolution(semisimple2(), 3);
        CHECK(fd_dim(mir.terms[0]) == 2);
        for (int i = 1; i < 3; ++i) CHECK(is_zero(mir.terms[i]));
    }
    SUBCASE("A_2: I_1 = E (+) E, I_2 the simple injective, then zero") {
        auto mir = min_injective_resolution(a2_f2(), 3);
        CHECK(fd_dim(mir.terms[0]) == 4);
        CHECK(fd_dim(mir.terms[1]) == 1);
        CHECK(is_zero(mir.terms[2]));
        CHECK(mir.essential[0]);
        CHECK(mir.essential[1]);
    }
    SUBCASE("duality cross-check: I_i matches vdual of the projective resolution") {
        // vdual duality at the level of dimension vectors (spec invariant)
        auto A = a2_f2();
        auto reg = QMod::free_module(A->opposite(), Side::Right, 1);
        auto vd = vdual(reg);
        auto res = resolution(vd.module, 2);
        auto mir = min_injective_resolution(A, 2);
        // I_1 is the vdual of the projective cover of vdual(regular)
        auto cov = fd_projective_cover(vd.module);
        CHECK(fd_dim(mir.terms[0]) == fd_dim(cov.P));
        (void)res;
    }
}

TEST_CASE("classify: pinned verdicts")
{
    SUBCASE("F_2[x]/(x^2), k = 5: k-Gorenstein, fd(I_1) = 0") {
        auto rep = classify(f2x2(), 5, 8);
        CHECK(rep.k_gorenstein);
        CHECK(rep.quasi_k_gorenstein);
        REQUIRE(rep.terms[0].fd.has_value());
        CHECK(rep.terms[0].fd->value == 0);
        for (int i = 1; i < 5; ++i) CHECK(rep.terms[i].zero);
    }
    SUBCASE("A_2, k = 2: fd list [0, 1], 2-Gorenstein") {
        auto rep = classify(a2_f2(), 2, 8);
        CHECK(rep.k_gorenstein);
        CHECK(rep.quasi_k_gorenstein);
        REQUIRE(rep.terms[0].fd.has_value());
        REQUIRE(rep.terms[1].fd.has_value());
        CHECK(rep.terms[0].fd->value == 0);
        CHECK(rep.terms[1].fd->value == 1);
    }
    SUBCASE("semisimple: every fd is zero") {
        auto rep = classify(semisimple2(), 3, 8);
        CHECK(rep.k_gorenstein);
        for (const auto& t : rep.terms)
            if (!t.zero) CHECK(t.fd->value == 0);
    }
    SUBCASE("integers: asserted, not computed") {
        auto rep = classify_integers(4);
        CHECK(!rep.capability);
        CHECK(rep.k_gorenstein);
        CHECK(rep.quasi_k_gorenstein);
    }
}

TEST_CASE("grade spot checks")
{
    SUBCASE("clean on the Gorenstein fixtures") {
        for (auto A : {f2x2(), f3x3(), a2_f2(), semisimple2()}) {
            auto samples = default_spotcheck_samples(A, Side::Left);
            auto right = default_spotcheck_samples(A, Side::Right);
            samples.insert(samples.end(), right.begin(), right.end());
            auto rep = grade_spotcheck(samples, 2);
            CHECK(rep.clean());
        }
    }
    SUBCASE("free modules are vacuously clean") {
        std::vector<FPModule<ZRing>> samples = {
            FPModule<ZRing>::free_module(ZRing::instance(), Side::Left, 2)};
        CHECK(grade_spotcheck(samples, 3).clean());
    }
    SUBCASE("consistency: classify true implies clean spot checks") {
        for (auto A : {f2x2(), a2_f2()}) {
            auto rep = classify(A, 2, 8);
            REQUIRE(rep.quasi_k_gorenstein);
            auto samples = default_spotcheck_samples(A, Side::Left);
            auto right = default_spotcheck_samples(A, Side::Right);
            samples.insert(samples.end(), right.begin(), right.end());
            CHECK(grade_spotcheck(samples, 2).clean());
        }
    }
}

TEST_CASE("classify reports Inconclusive when the cap is too small")
{
    // over A_2 the second term has projective dimension 1; cap 0 cannot decide
    CHECK_THROWS_AS(classify(a2_f2(), 2, 0), Error);
    try {
        classify(a2_f2(), 2, 0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Inconclusive);
    }
}

TEST_CASE("spot checks accept caller-supplied integer samples")
{
    std::vector<FPModule<ZRing>> samples = {z_cyclic(2), zmod(2, {{2, 0}})};
    auto rep = grade_spotcheck(samples, 2);
    // the integers satisfy the grade condition: no violations expected
    CHECK(rep.clean());
}
