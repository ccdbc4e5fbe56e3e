#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aztec/contour.hpp"
#include "aztec/laurent.hpp"

using namespace aztec;

TEST(Contour, CauchyBasics) {
    CircleContour unit{cd(0, 0), 1.0, 64};
    EXPECT_NEAR(std::abs(integrate_circle([](cd z) { return 1.0 / z; }, unit, 1e-13).value - cd(1, 0)), 0, 1e-13);
    for (int k : {-3, -2, 0, 1, 4})
        EXPECT_LT(std::abs(integrate_circle([k](cd z) { return std::pow(z, k); }, unit, 1e-13).value), 1e-13);
}

TEST(Contour, RationalAgainstResidues) {
    CircleContour c{cd(0, 0), 0.75, 64};
    cd v = integrate_circle([](cd z) { return (1.0 + z / 2.0) / ((z - 0.5) * z); }, c, 1e-13).value;
    EXPECT_NEAR(v.real(), 0.5, 1e-12);
    ExactResidues R(mpq_class(1, 2));
    EXPECT_EQ(R.single(Mono{1, -1, -1}), mpq_class(1, 2));
}

TEST(Contour, PsiZeroTwoIsOnePlusASquared) {
    for (mpq_class a : {mpq_class(1, 3), mpq_class(1, 2), mpq_class(2)}) {
        ExactResidues R(a);
        // (1+az)(1-a/z)^{-1} z^{-1} = (1+az)(z-a)^{-1}
        EXPECT_EQ(R.single(Mono{1, -1, 0}), 1 + a * a);
    }
}

TEST(Contour, DoubleSeriesOracle) {
    CircleContour in{cd(0, 0), 0.5, 64}, out{cd(0, 0), 2.0, 64};
    cd v0 = integrate_double([](cd z, cd w) { return 1.0 / ((w - z) * z); }, in, out, 1e-12).value;
    cd v1 = integrate_double([](cd z, cd w) { return 1.0 / ((w - z) * w); }, in, out, 1e-12).value;
    // 1/(w-z) = sum z^k / w^(k+1): only k = 0 survives against 1/z, nothing survives against 1/w
    EXPECT_LT(std::abs(v0 - cd(1, 0)), 1e-10);
    EXPECT_LT(std::abs(v1), 1e-10);
    EXPECT_THROW(integrate_double([](cd, cd) { return cd(1); }, in, CircleContour{cd(0, 0), 0.52, 64}, 1e-12),
                 QuadratureError);
}

TEST(Contour, GaussianLine) {
    // (1/2 pi i) int e^{w^2} dw over an upward line = 1/(2 sqrt(pi))
    const double exact = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
    for (double c : {0.5, 1.0, 1.5}) {
        cd v = integrate_gaussian_line([](cd w) { return std::exp(w * w); }, {c, 6.0, 64}, 1e-13).value;
        EXPECT_NEAR(v.real(), exact, 1e-12);
        EXPECT_NEAR(v.imag(), 0, 1e-12);
    }
    cd v6 = integrate_gaussian_line([](cd w) { return std::exp(w * w); }, {1.0, 6.0, 64}, 1e-13).value;
    cd v8 = integrate_gaussian_line([](cd w) { return std::exp(w * w); }, {1.0, 8.0, 64}, 1e-13).value;
    EXPECT_LT(std::abs(v6 - v8), 1e-12);
    EXPECT_THROW(integrate_gaussian_line([](cd w) { return std::exp(-w * w); }, {1.0, 6.0, 64}, 1e-12),
                 QuadratureError);
}

TEST(Contour, ResidueMatchesQuadratureCorpus) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> e(-6, 6);
    for (mpq_class a : {mpq_class(1, 3), mpq_class(1, 2), mpq_class(1)}) {
        ExactResidues R(a);
        const double ad = a.get_d();
        CircleContour c{cd(ad / 2, 0), ad / 2 + 1.0 / (3 * ad), 64};
        for (int trial = 0; trial < 40; ++trial) {
            Mono m{e(rng), e(rng), e(rng)};
            cd q = integrate_circle(
                [&](cd z) { return std::pow(1.0 + ad * z, m.p) * std::pow(z - ad, m.q) * std::pow(z, m.r); }, c,
                1e-14).value;
            double ex = R.single(m).get_d();
            EXPECT_NEAR(q.real(), ex, 1e-10 * std::max(1.0, std::abs(ex))) << m.str();
        }
    }
}

TEST(Laurent, DoubleResidueMatchesQuadrature) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> e(-4, 4);
    mpq_class a(1, 2);
    ExactResidues R(a);
    const double ad = 0.5;
    CircleContour in{cd(ad / 2, 0), ad / 2 + 1.0 / (3 * ad), 64}, out{cd(ad / 2, 0), ad / 2 + 2.0 / (3 * ad), 64};
    auto ev = [&](const Mono& m, cd z) { return std::pow(1.0 + ad * z, m.p) * std::pow(z - ad, m.q) * std::pow(z, m.r); };
    for (int trial = 0; trial < 30; ++trial) {
        Mono f{e(rng), e(rng), e(rng)}, g{e(rng), e(rng), e(rng)};
        cd q = integrate_double_separable([&](cd z) { return ev(f, z); }, [&](cd w) { return ev(g, w); }, in, out,
                                          1e-14).value;
        double ex = R.dbl(f, g).get_d();
        EXPECT_NEAR(q.real(), ex, 1e-10 * std::max(1.0, std::abs(ex)));
    }
}
