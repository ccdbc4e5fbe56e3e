#include <gtest/gtest.h>

#include <cmath>

#include "aztec/kernels_limit.hpp"

using namespace aztec;

namespace {
constexpr double kTol = 1e-9;
}

TEST(KernelsLimit, HmPolynomials) {
    EXPECT_DOUBLE_EQ(H_m(1, 0.7), 1.0);
    EXPECT_DOUBLE_EQ(H_m(3, 2.0), 2.0);
    EXPECT_DOUBLE_EQ(H_m(2, -0.1), 0.0);
    EXPECT_THROW(H_m(0, 1.0), std::invalid_argument);
}

TEST(KernelsLimit, ClosedFormValues) {
    for (double b : {0.0, 0.3, -0.4}) {
        TacnodeKernel T({b, 2});
        EXPECT_NEAR(T.H(-1), 1.0, kTol);
        EXPECT_NEAR(T.H(-2), 4 * b, kTol);
        EXPECT_EQ(T.H(0), 0.0);
        EXPECT_NEAR(T.G(-2), std::exp(-2 * b * b) / (2 * std::sqrt(2 * M_PI)), kTol);
    }
}

TEST(KernelsLimit, GueMinorOneParticle) {
    TacnodeKernel T({0.2, 0});
    for (double x : {-1.3, 0.0, 0.45, 2.0})
        EXPECT_NEAR(T.gue_minor(1, x, 1, x), std::exp(-x * x) / std::sqrt(M_PI), kTol);
}

TEST(KernelsLimit, Factorizations) {
    const double b = 0.3;
    TacnodeKernel T({b, 2});
    const int NA = 40;
    for (auto [l, k] : {std::pair{-2, -1}, {0, -2}, {1, -1}}) {
        double s = 0;
        for (int al = 0; al < NA; ++al) s += T.G(l + al) * T.H(al + k);
        EXPECT_NEAR(T.calK(l, k), s, 1e-8) << l << " " << k;
    }
    const int u1 = 1;
    const double y1 = 0.4;
    for (int k = -2; k < 2; ++k) {
        double s = T.g(-y1, k + u1);
        for (int al = 0; al < NA; ++al) s -= T.G(k + al) * T.h(y1, al - u1);
        EXPECT_NEAR(T.calA(y1 - b, u1, k), s, 1e-8) << k;
    }
    const int u2 = 0;
    const double y2 = -0.2;
    for (int l = -2; l < 2; ++l) {
        double s = T.h(-y2, l + u2);
        for (int al = 0; al < NA; ++al) s -= T.H(l + al) * T.g(y2, al - u2);
        EXPECT_NEAR(T.calB(y2 - b, u2, l), s, 1e-8) << l;
    }
}

TEST(KernelsLimit, BVanishesBeyondSupport) {
    TacnodeKernel T({0.1, 2});
    for (int u : {-2, 0, 1, 3})
        for (int l = std::max(0, -u); l < std::max(0, -u) + 4; ++l)
            EXPECT_NEAR(T.calB(0.35, u, l), 0.0, 1e-10) << u << " " << l;
}

TEST(KernelsLimit, ResolventCertified) {
    TacnodeKernel T({0.5, 2});
    EXPECT_LT(T.resolvent().certificate, 1e-12);
}

TEST(KernelsLimit, TailOfPerturbationIsZero) {
    TacnodeKernel T({0.3, 2});
    for (LimitPoint p1 : {LimitPoint{1, 0.4}, LimitPoint{2, -0.1}})
        for (LimitPoint p2 : {LimitPoint{0, -0.2}, LimitPoint{-1, 0.3}}) {
            const double full = T.kernel(p1, p2);
            const double base = T.gue_minor(p1.u, 0.3 - p1.y, p2.u, 0.3 - p2.y);
            EXPECT_NEAR(full, base + T.perturbation(p1, p2, 12), 1e-9);
        }
}

TEST(KernelsLimit, InvolutionFormAgrees) {
    for (double b : {0.0, 0.3}) {
        TacnodeKernel T({b, 2});
        for (auto [p1, p2] : {std::pair{LimitPoint{1, 0.4}, LimitPoint{0, -0.2}},
                              {LimitPoint{2, 0.1}, LimitPoint{3, 0.5}},
                              {LimitPoint{0, -0.3}, LimitPoint{1, -0.3}}})
            EXPECT_NEAR(T.kernel(p1, p2), T.kernel_mirrored(p1, p2), 1e-8)
                << p1.u << "," << p1.y << " " << p2.u << "," << p2.y;
    }
}

TEST(KernelsLimit, RhoZeroIsGueMinor) {
    TacnodeKernel T({0.3, 0});
    EXPECT_NEAR(T.kernel({0, 0.1}, {1, 0.3}), T.gue_minor(0, 0.2, 1, 0.0), 1e-12);
    EXPECT_NEAR(T.kernel({2, -0.4}, {1, 0.3}), T.gue_minor(2, 0.7, 1, 0.0), 1e-12);
}
