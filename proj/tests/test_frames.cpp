#include <gtest/gtest.h>

#include <random>

#include "cyvhs/frames.hpp"

using namespace cyvhs;

namespace {

const FrameContext& c3() {
    static const FrameContext ctx = make_frame_context(build_family(Family::C, 3));
    return ctx;
}

TEST(Jets, MonomialTableCounts) {
    for (std::size_t m : {1, 2, 3, 6})
        for (std::size_t j : {0, 1, 3, 4}) {
            auto t = monomial_table(m, j);
            EXPECT_EQ(t->size(), binomial(m + j, j));
            for (std::size_t k = 0; k <= j; ++k) EXPECT_EQ(t->count_through(k), binomial(m + k, k));
        }
    auto t = monomial_table(2, 3);
    auto i = *t->index({1, 1}), j = *t->index({0, 2});
    bool found = false;
    for (auto [jj, k] : t->products(i))
        if (jj == j) {
            EXPECT_EQ(t->exponent(k), (Exponent{1, 3}));
            found = true;
        }
    EXPECT_FALSE(found);  // degree 4 exceeds the order
    auto [c, k] = t->derivative(*t->index({0, 3}), 1);
    EXPECT_EQ(c, 3);
    EXPECT_EQ(t->exponent(k), (Exponent{0, 2}));
}

TEST(Jets, ExpMatchesDirectSeries) {
    const auto& ctx = c3();
    auto table = monomial_table(1, 5);
    const Matrix& xi = ctx.model.xi[2];
    MatrixJet e = exp_jet(MatrixJet::linear(table, {xi}));
    Matrix power = Matrix::identity(xi.rows());
    Rational fact = 1;
    for (std::size_t k = 0; k <= 5; ++k) {
        if (k > 0) {
            power = power * xi;
            fact *= Rational(static_cast<long long>(k));
        }
        Matrix expect = power;
        expect *= fact.inverse();
        EXPECT_TRUE(e.at(Exponent{static_cast<int>(k)}) == expect) << "k=" << k;
    }
    EXPECT_TRUE(exp_jet(MatrixJet(table, 3, 3)) == MatrixJet::identity(table, 3));
    EXPECT_THROW(exp_jet(MatrixJet::identity(table, 3)), std::invalid_argument);
}

TEST(Jets, GroupLawAndInverse) {
    const auto& ctx = c3();
    std::mt19937_64 rng(11);
    for (std::size_t m : {1, 2, 3}) {
        auto f = random_group_jet(ctx, 3, m, rng);
        MatrixJet inv = inverse_jet(f.e);
        EXPECT_TRUE(f.e * inv == MatrixJet::identity(f.e.table(), 14));
        MCForm mc = maurer_cartan(f);
        for (auto& t : mc.theta) {
            // exp of a jet without constant term
            MatrixJet y = t;
            y.coeff(0) = Matrix(14, 14);
            EXPECT_TRUE(exp_jet(y) * exp_jet(-y) == MatrixJet::identity(y.table(), 14));
        }
    }
}

TEST(Jets, ComposeSubstitutesVariables) {
    auto t2 = monomial_table(2, 3);
    auto t1 = monomial_table(1, 3);
    MatrixJet f(t2, 1, 1);
    f.at(Exponent{1, 0})(0, 0) = 1;
    f.at(Exponent{1, 1})(0, 0) = 2;  // t0 + 2 t0 t1
    MatrixJet s = MatrixJet::linear(t1, {Matrix::identity(1)});
    MatrixJet s2 = s * s;
    auto g = compose(f, {s, s2});  // s + 2 s^3
    EXPECT_EQ(g.at(Exponent{1})(0, 0), Rational(1));
    EXPECT_EQ(g.at(Exponent{2})(0, 0), Rational(0));
    EXPECT_EQ(g.at(Exponent{3})(0, 0), Rational(2));
}

TEST(Frames, ModelFrameIsFlatAndAdapted) {
    const auto& ctx = c3();
    auto f = model_frame(ctx, 4);
    EXPECT_TRUE(gram_constant(f, ctx));
    MCForm mc = maurer_cartan(f);
    ASSERT_EQ(mc.theta.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i)
        EXPECT_TRUE(mc.theta[i] == MatrixJet::constant(f.e.table(), ctx.model.xi[i])) << i;
    EXPECT_TRUE(structure_equation_holds(mc));
    EXPECT_TRUE(in_endomorphisms(mc, ctx));
    EXPECT_TRUE(horizontality_check(mc, ctx));
    EXPECT_TRUE(cy_check(mc, ctx));
    auto comp = split_components(mc, ctx);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_TRUE(comp.eta[i].is_zero());
        EXPECT_TRUE(comp.gperp_nonneg[i].is_zero());
        EXPECT_TRUE(comp.omega[i] == mc.theta[i]);
    }
    auto q = char_coeffs(mc, ctx);
    ASSERT_EQ(q.size(), 2u);
    for (auto& lv : q) {
        EXPECT_TRUE(lv.symmetric) << lv.k;
        EXPECT_TRUE(lv.matches_model) << lv.k;
    }
    auto v = eta_test(f, ctx);
    EXPECT_TRUE(v.congruent);
    EXPECT_EQ(v.verified_order, 3u);
}

TEST(Frames, ConstantFrameIsHorizontalNotCY) {
    const auto& ctx = c3();
    auto f = FrameJet{MatrixJet::constant(monomial_table(2, 3), ctx.frame.basis_matrix)};
    MCForm mc = maurer_cartan(f);
    for (auto& t : mc.theta) EXPECT_TRUE(t.is_zero());
    EXPECT_TRUE(horizontality_check(mc, ctx));
    EXPECT_FALSE(cy_check(mc, ctx));
    EXPECT_FALSE(immersion_check(mc, ctx));
}

TEST(Frames, DegreeMinusTwoCurveIsNotHorizontal) {
    const auto& ctx = c3();
    const auto& e2 = ctx.graded.E_at(-2);
    ASSERT_GT(e2.dim(), 0u);
    Matrix x = unvec(e2.vectors()[0], 14);
    auto f = FrameJet{exp_jet(MatrixJet::linear(monomial_table(1, 4), {x})).left(ctx.frame.basis_matrix)};
    EXPECT_TRUE(gram_constant(f, ctx));
    EXPECT_FALSE(horizontality_check(maurer_cartan(f), ctx));
    try {
        eta_test(f, ctx);
        FAIL() << "expected rejection";
    } catch (const FrameInputError& e) {
        EXPECT_EQ(e.kind(), FrameErrorKind::not_horizontal);
    }
}

TEST(Frames, TranslatesAreCongruent) {
    const auto& ctx = c3();
    std::mt19937_64 rng(5);
    auto model = model_frame(ctx, 4);
    for (int s = 0; s < 3; ++s) {
        Matrix g = random_automorphism(ctx, rng);
        EXPECT_TRUE(g.transpose() * ctx.vhs.Q.gram * g == ctx.vhs.Q.gram);
        auto f = left_translate(model, g);
        EXPECT_TRUE(gram_constant(f, ctx));
        auto q = char_coeffs(maurer_cartan(f), ctx);
        for (auto& lv : q) EXPECT_TRUE(lv.matches_model);
        auto v = eta_test(f, ctx);
        EXPECT_TRUE(v.congruent);
    }
}

TEST(Frames, PerturbedCurveIsObstructedAtLevelTwo) {
    const auto& ctx = c3();
    std::mt19937_64 rng(3);
    for (int s = 0; s < 3; ++s) {
        Matrix zeta;
        auto f = perturbed_curve(ctx, 4, rng, &zeta);
        MCForm mc = maurer_cartan(f);
        EXPECT_TRUE(horizontality_check(mc, ctx));
        auto comp = split_components(mc, ctx);
        EXPECT_FALSE(comp.eta[0].is_zero());
        EXPECT_TRUE(level_residue(mc, ctx, 1)[0].is_zero());
        EXPECT_FALSE(level_residue(mc, ctx, 2)[0].is_zero());
        auto v = eta_test(f, ctx);
        EXPECT_FALSE(v.congruent);
        EXPECT_EQ(v.stage, "eta");
        EXPECT_EQ(v.level, 2);
        EXPECT_FALSE(v.residue.is_zero());
        EXPECT_EQ(v.monomial, Exponent{0});
    }
}

TEST(Frames, RightTranslationIsUndoneByReduction) {
    const auto& ctx = c3();
    std::mt19937_64 rng(9);
    const auto& basis = ctx.graded.gperp_basis_at(1);
    ASSERT_FALSE(basis.empty());
    Matrix zeta0(14, 14);
    for (auto& b : basis)
        if (rng() % 2) zeta0.add_scaled(b, Rational(static_cast<long long>(rng() % 3) + 1));
    ASSERT_FALSE(zeta0.is_zero());
    auto model = model_frame(ctx, 4);
    auto p = exp_jet(MatrixJet::constant(model.e.table(), zeta0)).constant_term();
    auto f = right_translate(model, p);
    MCForm mc = maurer_cartan(f);
    EXPECT_FALSE(split_components(mc, ctx).gperp_nonneg[0].is_zero());
    auto red = frame_reduction(f, ctx);
    ASSERT_TRUE(red.success);
    EXPECT_EQ(red.verified_order, 3u);
    ASSERT_EQ(red.corrections.size(), 4u);
    EXPECT_TRUE(red.corrections[0] == MatrixJet::constant(model.e.table(), -zeta0));
    for (std::size_t l = 1; l < red.corrections.size(); ++l) EXPECT_TRUE(red.corrections[l].is_zero());
    EXPECT_TRUE(red.reduced.e == model.e);
    EXPECT_TRUE(eta_test(f, ctx).congruent);
}

TEST(Frames, GaugeByPositiveDegreeKeepsCoframe) {
    const auto& ctx = c3();
    std::mt19937_64 rng(21);
    auto model = model_frame(ctx, 4);
    MatrixJet p(model.e.table(), 14, 14);
    for (std::size_t i = 0; i < p.table()->size(); ++i)
        for (int l = 1; l <= 3; ++l) {
            const auto& e = ctx.graded.E_at(l);
            if (e.dim() && rng() % 2) p.coeff(i).add_scaled(unvec(e.vectors()[rng() % e.dim()], 14), Rational(1));
        }
    FrameJet f{model.e * exp_jet(p)};
    EXPECT_TRUE(gram_constant(f, ctx));
    auto w0 = coframe_matrix(maurer_cartan(model), ctx);
    auto w1 = coframe_matrix(maurer_cartan(f), ctx);
    EXPECT_TRUE((w1 - w0).is_zero_through(3));
    EXPECT_TRUE(eta_test(f, ctx).congruent);
}

TEST(Frames, VerdictInvariantUnderReparameterization) {
    const auto& ctx = c3();
    auto model = model_frame(ctx, 4);
    auto t = monomial_table(6, 4);
    std::vector<MatrixJet> phi;
    for (std::size_t v = 0; v < 6; ++v) {
        MatrixJet s(t, 1, 1);
        Exponent e(6, 0);
        e[v] = 1;
        s.at(e)(0, 0) = 1;
        e[(v + 1) % 6] += 1;
        s.at(e)(0, 0) = Rational(static_cast<long long>(v) + 1, 2);  // t_v + c t_v t_{v+1}
        if (v == 0) {
            Exponent e2(6, 0);
            e2[1] = 1;
            s.at(e2)(0, 0) = 3;
        }
        phi.push_back(s);
    }
    FrameJet f{compose(model.e, phi)};
    EXPECT_TRUE(eta_test(f, ctx).congruent);
    std::mt19937_64 rng(3);
    auto pert = perturbed_curve(ctx, 4, rng);
    auto t1 = monomial_table(1, 4);
    MatrixJet s(t1, 1, 1);
    s.at(Exponent{1})(0, 0) = -2;
    s.at(Exponent{2})(0, 0) = 1;
    auto v = eta_test(FrameJet{compose(pert.e, {s})}, ctx);
    EXPECT_FALSE(v.congruent);
    EXPECT_EQ(v.level, 2);
}

TEST(Frames, RandomGroupJetsSatisfyStructureEquation) {
    const auto& ctx = c3();
    std::mt19937_64 rng(1);
    for (std::size_t m : {1, 3}) {
        auto f = random_group_jet(ctx, 4, m, rng);
        EXPECT_TRUE(gram_constant(f, ctx));
        MCForm mc = maurer_cartan(f);
        EXPECT_TRUE(structure_equation_holds(mc));
        EXPECT_TRUE(in_endomorphisms(mc, ctx));
    }
}

TEST(Frames, InsufficientOrderRejected) {
    const auto& ctx = c3();
    try {
        eta_test(model_frame(ctx, 3), ctx);
        FAIL() << "expected rejection";
    } catch (const FrameInputError& e) {
        EXPECT_EQ(e.kind(), FrameErrorKind::insufficient_order);
    }
}

TEST(Frames, OtherFamilies) {
    for (auto [fam, size] : {std::pair{Family::A, 2u}, std::pair{Family::BD, 3u}, std::pair{Family::A, 3u}}) {
        auto ctx = make_frame_context(build_family(fam, size));
        auto f = model_frame(ctx, static_cast<std::size_t>(ctx.weight()) + 1);
        EXPECT_TRUE(gram_constant(f, ctx));
        EXPECT_TRUE(eta_test(f, ctx).congruent) << family_name(fam) << size;
    }
}

}  // namespace
