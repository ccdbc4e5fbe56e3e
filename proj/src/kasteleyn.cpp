#include "aztec/kasteleyn.hpp"

#include <cmath>
#include <stdexcept>

namespace aztec {

GaussRat kasteleyn_entry(KCoord b, KCoord w, const mpq_class& a) {
    const KCoord d = w - b;
    GaussRat alpha;
    int pm;
    if (d == kE1 || d == KCoord{-1, -1}) {
        alpha = GaussRat(1);
        pm = d == kE1 ? 1 : -1;
    } else if (d == kE2 || d == KCoord{1, -1}) {
        alpha = GaussRat(0, -a);
        pm = d == kE2 ? 1 : -1;
    } else {
        return GaussRat(0);
    }
    // (-1)^{-(b1 + b2 +- 1)/2}
    const long e = -(b.xi + b.eta + pm) / 2;
    return neg1pow(e) > 0 ? alpha : -alpha;
}

Dense<GaussRat> build_Ka_exact(const DualGraph& g) {
    const auto& B = g.blacks();
    const auto& W = g.whites();
    Dense<GaussRat> K(B.size(), std::vector<GaussRat>(W.size()));
    for (const auto& e : g.edges()) K[e.black][e.white] = kasteleyn_entry(B[e.black], W[e.white], g.params().a);
    return K;
}

Dense<cplx> build_Ka(const DualGraph& g) {
    auto Ke = build_Ka_exact(g);
    Dense<cplx> K(Ke.size(), std::vector<cplx>(Ke.empty() ? 0 : Ke[0].size()));
    for (size_t i = 0; i < Ke.size(); ++i)
        for (size_t j = 0; j < Ke[i].size(); ++j) K[i][j] = Ke[i][j].to_complex();
    return K;
}

std::vector<Face> faces(const DualGraph& g) {
    std::vector<Face> out;
    std::map<KCoord, int> seen;
    for (const auto& b : g.blacks())
        for (KCoord d : {KCoord{1, 0}, KCoord{-1, 0}, KCoord{0, 1}, KCoord{0, -1}}) seen[b + d] = 1;
    for (const auto& [c, _] : seen) {
        // squares around c: two of each color
        KCoord sq[4] = {c + KCoord{1, 0}, c + KCoord{-1, 0}, c + KCoord{0, 1}, c + KCoord{0, -1}};
        Face f{c, {-1, -1}, {-1, -1}};
        int nb = 0, nw = 0;
        for (auto s : sq) {
            if (int i = g.black_index(s); i >= 0 && nb < 2) f.b[nb++] = i;
            else if (int j = g.white_index(s); j >= 0 && nw < 2) f.w[nw++] = j;
        }
        if (nb == 2 && nw == 2) out.push_back(f);
    }
    return out;
}

double face_condition_violation(const DualGraph& g, const Dense<cplx>& Ka) {
    double worst = 0;
    for (const auto& f : faces(g)) {
        cplx r = Ka[f.b[0]][f.w[0]] * Ka[f.b[1]][f.w[1]] / (Ka[f.b[0]][f.w[1]] * Ka[f.b[1]][f.w[0]]);
        worst = std::max(worst, std::abs(r.imag()) + std::max(0.0, r.real()));
    }
    return worst;
}

mpq_class partition_function_exact(const Dense<GaussRat>& Ka) {
    GaussRat d = exact_det(Ka);
    if (d.re != 0 && d.im != 0) throw std::domain_error("determinant is not a unit multiple of a rational");
    mpq_class v = d.re != 0 ? mpq_class(abs(d.re)) : mpq_class(abs(d.im));
    return v / kGaugeNormalization;
}

double partition_function(const Dense<cplx>& Ka) {
    return std::abs(dense_det(Ka)) / kGaugeNormalization.get_d();
}

Dense<cplx> inverse_solve(const Dense<cplx>& Ka) { return dense_inverse(Ka); }

GaussRat inverse_phase(KCoord w, KCoord b) {
    return -i_pow((w.xi - w.eta + b.xi - b.eta + 2) / 2);
}

namespace {

struct KArgs {
    long R, x, Q, y;
};

KArgs kernel_args(KCoord w, KCoord b, int m) {
    return {b.eta + 1, (b.eta - b.xi + 2 * m + 1) / 2, w.eta + 1, (w.eta - w.xi + 2 * m + 1) / 2};
}

}  // namespace

Dense<cplx> inverse_formula(const DualGraph& g, const FiniteKernels& fk, InversePath path) {
    const auto& W = g.whites();
    const auto& B = g.blacks();
    const int m = g.params().m();
    Dense<cplx> C(W.size(), std::vector<cplx>(B.size()));
    for (size_t i = 0; i < W.size(); ++i)
        for (size_t j = 0; j < B.size(); ++j) {
            const KArgs k = kernel_args(W[i], B[j], m);
            const double v = path == InversePath::Kernel ? fk.K(k.R, k.x, k.Q, k.y)
                                                         : -fk.eynard_mehta(k.R, k.x, k.Q, k.y);
            C[i][j] = inverse_phase(W[i], B[j]).to_complex() * v;
        }
    return C;
}

Dense<GaussRat> inverse_formula_exact(const DualGraph& g, const ExactKernels& fk) {
    const auto& W = g.whites();
    const auto& B = g.blacks();
    const int m = g.params().m();
    Dense<GaussRat> C(W.size(), std::vector<GaussRat>(B.size()));
    for (size_t i = 0; i < W.size(); ++i)
        for (size_t j = 0; j < B.size(); ++j) {
            const KArgs k = kernel_args(W[i], B[j], m);
            C[i][j] = inverse_phase(W[i], B[j]) * GaussRat(fk.K_kernel(k.R, k.x, k.Q, k.y));
        }
    return C;
}

double dimer_correlation(const std::vector<KEdge>& edges, const Dense<cplx>& Ka, const Dense<cplx>& Kinv) {
    const size_t k = edges.size();
    Dense<cplx> M(k, std::vector<cplx>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            M[i][j] = Ka[edges[i].black][edges[i].white] * Kinv[edges[i].white][edges[j].black];
    return dense_det(M).real();
}

IdentityReport verify_identity_cases(const DualGraph& g, const Dense<cplx>& Ka, const Dense<cplx>& C,
                                     double tol) {
    IdentityReport rep;
    rep.passed = true;
    const auto& B = g.blacks();
    for (int b = 0; b < (int)B.size(); ++b) {
        const BoundaryClass cls = g.classify(b);
        double& worst = rep.max_residual[cls];
        rep.rows[cls] += 1;
        for (int y = 0; y < (int)B.size(); ++y) {
            cplx s = 0;
            for (int w : g.black_neighbors(b)) s += Ka[b][w] * C[w][y];
            const double r = std::abs(s - cplx(b == y ? 1.0 : 0.0));
            if (r > worst) worst = r;
            if (rep.passed && r > tol) {
                rep.passed = false;
                rep.first_fail_class = cls;
                rep.first_fail_black = B[b];
                rep.first_fail_black_column = B[y];
            }
        }
    }
    return rep;
}

}  // namespace aztec
