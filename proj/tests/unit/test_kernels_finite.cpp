#include <gtest/gtest.h>

#include <random>

#include "aztec/kasteleyn.hpp"
#include "aztec/kernels_finite.hpp"
#include "aztec/tiling.hpp"

using namespace aztec;

namespace {

DiamondParams P(int n, int rho, mpq_class a = 1) { return DiamondParams::make(n, rho, a); }

ExactKernels exact(const DiamondParams& p) { return ExactKernels(p, ExactEvaluator(p.a)); }

double maxdiff(const Dense<cplx>& A, const Dense<cplx>& B) {
    double d = 0;
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[i].size(); ++j) d = std::max(d, std::abs(A[i][j] - B[i][j]));
    return d;
}

}  // namespace

TEST(Kasteleyn, FaceCondition) {
    for (auto [n, rho] : {std::pair{2, 2}, {4, 2}, {6, 4}}) {
        DualGraph g(P(n, rho, mpq_class(1, 2)));
        EXPECT_FALSE(faces(g).empty());
        EXPECT_LT(face_condition_violation(g, build_Ka(g)), 1e-14);
    }
}

TEST(Kasteleyn, SparsityAndPhase) {
    DualGraph g(P(4, 2, mpq_class(1, 3)));
    auto K = build_Ka(g);
    for (size_t b = 0; b < K.size(); ++b) {
        int nz = 0;
        for (auto v : K[b]) nz += std::abs(v) > 0;
        EXPECT_EQ(nz, (int)g.black_neighbors(b).size());
    }
    // opposite offsets along e1 carry opposite signs
    for (const auto& b : g.blacks()) {
        const KCoord w1 = b + kE1, w2 = b - kE1;
        if (g.is_white(w1) && g.is_white(w2))
            EXPECT_EQ(kasteleyn_entry(b, w1, 1), -kasteleyn_entry(b, w2, 1));
    }
    auto Kp = K;
    for (auto& row : Kp)
        for (auto& v : row) v *= std::polar(1.0, 0.7);
    EXPECT_NEAR(partition_function(Kp), partition_function(K), 1e-9 * partition_function(K));
}

TEST(KernelsFinite, PsiBasics) {
    auto fk = exact(P(4, 2, mpq_class(1, 3)));
    for (long r = 0; r < 4; ++r)
        for (long x = -2; x <= 2; ++x)
            for (long y = -2; y <= 2; ++y) EXPECT_EQ(fk.psi(2 * r, 2 * r, x, y), mpq_class(x == y ? 1 : 0));
    EXPECT_EQ(fk.psi(0, 2, 0, 0), 1 + mpq_class(1, 9));
    EXPECT_EQ(fk.psi_tilde(3, 3, 0, 0), 0);
}

TEST(KernelsFinite, PsiFourTermIdentityExact) {
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2), mpq_class(2, 5)}) {
        auto fk = exact(P(4, 2, a));
        for (long r = 0; r < 3; ++r)
            for (long s = r; s < 4; ++s)
                for (long x1 = -2; x1 <= 2; ++x1)
                    for (long x2 = -2; x2 <= 2; ++x2) {
                        if (!(r < s)) continue;
                        mpq_class v = a * fk.psi_tilde(2 * r, 2 * s + 1, x1, x2) +
                                      fk.psi_tilde(2 * r, 2 * s + 1, x1, x2 + 1) -
                                      fk.psi_tilde(2 * r, 2 * s + 3, x1, x2 + 1) +
                                      a * fk.psi_tilde(2 * r, 2 * s + 3, x1, x2 + 2);
                        EXPECT_EQ(v, 0);
                    }
    }
}

TEST(KernelsFinite, BothFormsOfAAndB) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> small(-3, 3), idx(0, 9), k(3, 9);
    auto fk = exact(P(4, 2, mpq_class(1, 2)));
    QuadKernels fq(P(4, 2, mpq_class(1, 2)), QuadEvaluator(0.5, 1e-13));
    for (int t = 0; t < 25; ++t) {
        const long x = small(rng), S = idx(rng), kk = k(rng);
        EXPECT_EQ(fk.a_func(x, S, kk, 1), fk.a_func(x, S, kk, 2));
        EXPECT_EQ(fk.b_func(x, S, kk, 1), fk.b_func(x, S, kk, 2));
        EXPECT_NEAR(fq.a_func(x, S, kk, 1), fq.a_func(x, S, kk, 2), 1e-10);
        EXPECT_NEAR(fq.b_func(x, S, kk, 1), fq.b_func(x, S, kk, 2), 1e-10);
    }
}

TEST(KernelsFinite, QuadratureMatchesExact) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> small(-3, 3), idx(0, 9), k(3, 8), eta(0, 3), xi(0, 5);
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2), mpq_class(1, 3)}) {
        const auto p = P(4, 2, a);
        auto fe = exact(p);
        QuadKernels fq(p, QuadEvaluator(a.get_d(), 1e-13));
        DualGraph g(p);
        long x, y, R, Q, kk, j;
        auto close = [&](int line, double q, const mpq_class& e) {
            EXPECT_NEAR(q, e.get_d(), 1e-10 * std::max(1.0, std::abs(e.get_d())))
                << "line " << line << " a=" << a << " x=" << x << " y=" << y << " R=" << R << " Q=" << Q << " k=" << kk << " j=" << j;
        };
        for (int t = 0; t < 10; ++t) {
            x = small(rng), y = small(rng), R = idx(rng), Q = idx(rng), kk = k(rng), j = k(rng);
            const long e1 = 2 * eta(rng) + 1, e2 = 2 * eta(rng) + 1, x1 = 2 * xi(rng), x2 = 2 * xi(rng);
            close(__LINE__, fq.psi(R, Q, x, y), fe.psi(R, Q, x, y));
            close(__LINE__, fq.Kn(j, kk), fe.Kn(j, kk));
            close(__LINE__, fq.A_func(x1, e1, kk), fe.A_func(x1, e1, kk));
            close(__LINE__, fq.B_func(x2, e2, kk), fe.B_func(x2, e2, kk));
            close(__LINE__, fq.a_func(x, Q, kk), fe.a_func(x, Q, kk));
            close(__LINE__, fq.b_func(y, R, kk), fe.b_func(y, R, kk));
            close(__LINE__, fq.S_kernel(R, x, Q, y), fe.S_kernel(R, x, Q, y));
            close(__LINE__, fq.L_kernel(x1, e1, x2, e2), fe.L_kernel(x1, e1, x2, e2));
            // K on its domain: black and white vertices of the region
            const KCoord b = g.blacks()[(R * 7 + Q) % g.blacks().size()], w = g.whites()[(Q * 5 + kk) % g.whites().size()];
            const long v1 = b.eta + 1, v2 = (b.eta - b.xi + 2 * p.m() + 1) / 2;
            const long u1 = w.eta + 1, u2 = (w.eta - w.xi + 2 * p.m() + 1) / 2;
            close(__LINE__, fq.K_kernel(v1, v2, u1, u2), fe.K_kernel(v1, v2, u1, u2));
        }
    }
}

TEST(KernelsFinite, KnColumnsVanishBeyondN) {
    auto fk = exact(P(8, 4, 1));
    for (long j = 5; j < 20; ++j) {
        EXPECT_EQ(fk.Kn(j, 9), 0);
        EXPECT_EQ(fk.Kn(j, 18), 0);
    }
    bool nonzero = false;
    for (long j = 5; j < 12; ++j) nonzero |= fk.Kn(j, 8) != 0;
    EXPECT_TRUE(nonzero);
}

TEST(KernelsFinite, ResolventInvertsAndIsCertified) {
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2)}) {
        const auto p = P(6, 2, a);
        QuadKernels fq(p, QuadEvaluator(a.get_d(), 1e-13));
        const auto& R = fq.resolvent();
        EXPECT_LT(R.certificate, 1e-10);
        const long N = R.size;
        double worst = 0;
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < N; ++j) {
                double s = 0;
                for (long k = 0; k < N; ++k)
                    s += ((i == k ? 1.0 : 0.0) - fq.Kn(R.start + i, R.start + k)) * R.inv[k][j];
                worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
            }
        EXPECT_LT(worst, 1e-10);
        auto fe = exact(p);
        EXPECT_EQ(fe.resolvent().certificate, 0.0);
    }
}

TEST(KernelsFinite, BSingleTermVanishes) {
    auto fk = exact(P(4, 2, mpq_class(1, 2)));
    ExactResidues R(mpq_class(1, 2));
    const long n = 4;
    for (long xi = 0; xi <= 8; xi += 2)
        for (long eta = 1; eta <= 7; eta += 2)
            for (long k = xi / 2 + 1; k < xi / 2 + 5; ++k)
                EXPECT_EQ(R.single(Mono{n - (eta + 1) / 2, (eta + 1) / 2, k - 1 - xi / 2}), 0);
}

TEST(KernelsFinite, OneAztecReflection) {
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2)}) {
        const auto p = P(4, 2, a);
        auto fk = exact(p);
        for (long r = 1; r <= 4; ++r)
            for (long s = 1; s <= 4; ++s)
                for (long x = -1; x <= 3; ++x)
                    for (long y = -1; y <= 3; ++y) {
                        mpq_class direct = fk.S_kernel(2 * r, x, 2 * s, y);
                        if (s < r) direct -= (neg1pow(x - y) > 0 ? 1 : -1) * fk.psi(2 * r, 2 * s, x, y);
                        EXPECT_EQ(fk.K0(2 * r, x, 2 * s, y), direct);
                    }
    }
}

TEST(KernelsFinite, EynardMehtaMatchesKernel) {
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2)}) {
        const auto p = P(4, 2, a);
        auto fk = exact(p);
        DualGraph g(p);
        const int m = p.m();
        int checked = 0;
        for (const auto& w : g.whites())
            for (const auto& b : g.blacks()) {
                if ((w.xi + b.eta) % 5 != 0) continue;
                const long v1 = b.eta + 1, v2 = (b.eta - b.xi + 2 * m + 1) / 2;
                const long u1 = w.eta + 1, u2 = (w.eta - w.xi + 2 * m + 1) / 2;
                EXPECT_EQ(fk.eynard_mehta(v1, v2, u1, u2), -fk.K_kernel(v1, v2, u1, u2));
                ++checked;
            }
        EXPECT_GT(checked, 50);
    }
}

TEST(KernelsFinite, KLRelation) {
    std::mt19937 rng(9);
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2)}) {
        const auto p = P(4, 2, a);
        DualGraph g(p);
        FiniteKernels fk(p, Method::Quadrature, 1e-13);
        std::uniform_int_distribution<size_t> pick(0, g.blacks().size() - 1);
        for (int t = 0; t < 20; ++t) {
            const KCoord b1 = g.blacks()[pick(rng)], b2 = g.blacks()[pick(rng)];
            EXPECT_LT(kl_check(fk, {b1.xi, b1.eta}, {b2.xi, b2.eta}), 1e-10);
        }
        // same row, xi1 < xi2
        EXPECT_LT(kl_check(fk, {2, 3}, {6, 3}), 1e-10);
    }
}

TEST(KernelsFinite, InverseKasteleynBothWays) {
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2)}) {
        const auto p = P(4, 2, a);
        DualGraph g(p);
        FiniteKernels fk(p, Method::Quadrature, 1e-13);
        auto Ka = build_Ka(g);
        auto Ks = inverse_solve(Ka);
        auto Kf = inverse_formula(g, fk);
        EXPECT_LT(maxdiff(Ks, Kf), 1e-9);
        auto Kem = inverse_formula(g, fk, InversePath::EynardMehta);
        EXPECT_LT(maxdiff(Kem, Kf), 1e-10);
        auto rep = verify_identity_cases(g, Ka, Kf, 1e-9);
        EXPECT_TRUE(rep.passed);
        for (auto cls : {BoundaryClass::Interior, BoundaryClass::Left, BoundaryClass::Bottom, BoundaryClass::Top,
                         BoundaryClass::Special})
            EXPECT_GT(rep.rows[cls], 0) << to_string(cls);
    }
}

TEST(KernelsFinite, ExactInverseOnSmallestDiamond) {
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2)}) {
        const auto p = P(2, 2, a);
        DualGraph g(p);
        auto fk = exact(p);
        auto Ka = build_Ka_exact(g);
        auto C = inverse_formula_exact(g, fk);
        for (size_t b = 0; b < Ka.size(); ++b)
            for (size_t y = 0; y < Ka.size(); ++y) {
                GaussRat s;
                for (size_t w = 0; w < C.size(); ++w) s += Ka[b][w] * C[w][y];
                EXPECT_EQ(s, GaussRat(b == y ? 1 : 0));
            }
    }
}
