#include <gtest/gtest.h>

#include <cmath>

#include "aztec/asymptotics.hpp"

using namespace aztec;

TEST(Asymptotics, ParseRational) {
    EXPECT_EQ(parse_rational("0.5"), mpq_class(1, 2));
    EXPECT_EQ(parse_rational("-3/4"), mpq_class(-3, 4));
    EXPECT_EQ(parse_rational("2"), mpq_class(2));
    EXPECT_EQ(parse_rational("-0.25"), mpq_class(-1, 4));
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Asymptotics, ParamsValidation) {
    ScalingParams sp{9, 0, mpq_class(1, 2), 2};
    EXPECT_EQ(sp.a_exact(), mpq_class(5, 6));
    EXPECT_EQ((ScalingParams{36, 0, mpq_class(1, 2), 2}.a_exact()), mpq_class(11, 12));
    EXPECT_THROW((ScalingParams{9, 1, 0, 2}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((ScalingParams{9, 1, 0, 3}.validate()));
    EXPECT_THROW((ScalingParams{8, 0, mpq_class(1, 2), 2}.a_exact()), std::invalid_argument);
    EXPECT_THROW((ScalingParams{4, 0, 3, 2}.validate()), std::invalid_argument);
}

TEST(Asymptotics, PrefactorSpecialCases) {
    ScalingParams sp{9, 0, mpq_class(1, 2), 2};
    EXPECT_NEAR(prefactor_f(sp, 0, 1, 2, 1, 2), 3.0, 1e-14);
    EXPECT_NEAR(prefactor_f(sp, 1, 1, 2, 1, 2), -1.0 / 3.0, 1e-14);
    ScalingParams s0{16, 0, 0, 2};
    EXPECT_NEAR(prefactor_f(s0, 0, 0, 1, 2, 0), -1 * 16.0 * 4.0, 1e-12);
}

TEST(Asymptotics, FirstTermSpecialValues) {
    for (mpq_class beta : {mpq_class(0), mpq_class(1, 2)}) {
        ScalingParams sp{9, 0, beta, 2};
        ExactKernels fk(sp.diamond(), ExactEvaluator(sp.a_exact()));
        EXPECT_NEAR(C_term(1, fk, sp, 0, 2, 1, 1, 1), -sp.a_double(), 1e-14);
        EXPECT_EQ(c_terms(fk, sp, 0, 1, 1, 0, 1).c1, sp.a_exact());
        EXPECT_EQ(c_terms(fk, sp, 0, 2, 2, 0, 1).c1, 0);
        EXPECT_EQ(c_terms(fk, sp, 0, 1, 0, 0, -2).c1, 0);
    }
}

TEST(Asymptotics, DecompositionIdentityAtT8) {
    ScalingParams sp{8, 0, 0, 2};
    ExactKernels fk(sp.diamond(), ExactEvaluator(sp.a_exact()));
    for (auto [u1, Y1, u2, Y2] : {std::array<long, 4>{0, 0, 0, 0}, {1, 1, 0, -1}, {0, -1, 2, 2},
                                  {2, 0, 0, 1}, {1, 0, 0, 0}, {3, -2, 1, 1}}) {
        const LCReport r = lc_identity(fk, sp, u1, Y1, u2, Y2);
        EXPECT_TRUE(r.exact_equal) << u1 << " " << Y1 << " " << u2 << " " << Y2;
        EXPECT_LT(r.residual, 1e-8);
    }
}

TEST(Asymptotics, DecompositionIdentityOddN) {
    ScalingParams sp{4, 1, mpq_class(1, 2), 3};
    ExactKernels fk(sp.diamond(), ExactEvaluator(sp.a_exact()));
    EXPECT_TRUE(lc_identity(fk, sp, 1, 1, 0, -1).exact_equal);
    EXPECT_TRUE(lc_identity(fk, sp, 0, 0, 2, 1).exact_equal);
}

TEST(Asymptotics, KTermsCarryAnExtraFactorT) {
    for (mpq_class beta : {mpq_class(0), mpq_class(1, 2)}) {
        ScalingParams sp{9, 0, beta, 2};
        ExactKernels fk(sp.diamond(), ExactEvaluator(sp.a_exact()));
        for (auto [u1, Y1, u2, Y2] : {std::array<long, 4>{1, 1, 0, -1}, {0, -1, 2, 2}, {2, 0, 0, 1}}) {
            const double lhs = scaled_K(fk, sp, u1, Y1, u2, Y2);
            const double rhs = kc_from_terms(fk, sp, u1, Y1, u2, Y2);
            EXPECT_NEAR(lhs, 9.0 * rhs, 1e-10 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST(Asymptotics, EstBounds) {
    const EstReport r = est_bounds_check(1.0, 400, 2, 0.5);
    EXPECT_TRUE(r.fest_ok) << r.fest_margin;
    const EstReport r2 = est_bounds_check(1.0, 1600, 2, 0.5);
    EXPECT_TRUE(r2.fest_ok);
    EXPECT_GT(r.gest_C, 0);
    EXPECT_LT(r2.gest_C / r.gest_C, 2.0);
    EXPECT_GT(r2.gest_C / r.gest_C, 0.5);
    EXPECT_LT(r2.fest2_C / r.fest2_C, 2.0);
    EXPECT_GT(r2.fest2_C / r.fest2_C, 0.5);
}

TEST(Asymptotics, EstFactorization) {
    const double t = 100, a = 0.95;
    for (cd z : {cd(0.3, 0.2), cd(-0.5, 1.0), cd(1.1, -0.7)})
        for (double x : {-0.8, 0.0, 0.6}) {
            const cd lhs = est_F(x, t, a, z), rhs = est_F(0, t, a, z) * est_G(x, t, a, z);
            EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::abs(lhs));
        }
}

TEST(Asymptotics, SlopeFit) {
    EXPECT_NEAR(loglog_slope({1, 4, 16}, {1, 0.5, 0.25}), -0.5, 1e-12);
    EXPECT_THROW(loglog_slope({1}, {1}), std::invalid_argument);
}

TEST(Asymptotics, ShortLadderImproves) {
    const auto rep = converge_tacnode(LimitFamily::L, mpq_class(1, 2), 2, {9, 36},
                                      {{1, 1.0 / 3, 0, -1.0 / 3}, {2, 0, 0, 1.0 / 3}});
    ASSERT_EQ(rep.rows.size(), 2u);
    EXPECT_LT(rep.rows[1].max_error, rep.rows[0].max_error);
    EXPECT_TRUE(rep.monotone);
}
