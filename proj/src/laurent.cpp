#include "aztec/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace aztec {

std::string Mono::str() const {
    std::ostringstream os;
    os << "(1+az)^" << p << " (z-a)^" << q << " z^" << r;
    return os.str();
}

namespace {

mpq_class ipow(const mpq_class& x, long e) {
    mpq_class base = x, out = 1;
    if (e < 0) {
        if (x == 0) throw std::domain_error("negative power of zero");
        base = 1 / x;
        e = -e;
    }
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

}  // namespace

std::vector<mpq_class> taylor_two_factor(const mpq_class& alpha, const mpq_class& beta, long P,
                                         const mpq_class& gamma, const mpq_class& delta, long R,
                                         long N) {
    std::vector<mpq_class> c;
    if (N < 0) return c;
    c.reserve(N + 1);
    c.push_back(ipow(alpha, P) * ipow(gamma, R));
    const mpq_class ag = alpha * gamma;
    const mpq_class lin = alpha * delta + beta * gamma;
    const mpq_class bd = beta * delta;
    const mpq_class base = P * beta * gamma + R * alpha * delta;
    for (long k = 0; k < N; ++k) {
        mpq_class num = (base - lin * k) * c[k];
        if (k >= 1 && bd != 0) num += bd * (P + R - k + 1) * c[k - 1];
        num /= ag * (k + 1);
        c.push_back(std::move(num));
    }
    return c;
}

ExactResidues::ExactResidues(mpq_class a) : a_(std::move(a)) {
    a_.canonicalize();
    if (a_ == 0) throw std::invalid_argument("a must be nonzero");
    one_plus_a2_ = 1 + a_ * a_;
}

std::vector<mpq_class> ExactResidues::expand_zero(const Mono& m, long order) const {
    return taylor_two_factor(1, a_, m.p, -a_, 1, m.q, order);
}

std::vector<mpq_class> ExactResidues::expand_a(const Mono& m, long order) const {
    return taylor_two_factor(one_plus_a2_, a_, m.p, a_, 1, m.r, order);
}

std::vector<mpq_class> ExactResidues::expand_minus_inv_a(const Mono& m, long order) const {
    // 1+az = a e, z-a = -(1+a^2)/a + e, z = -1/a + e
    std::vector<mpq_class> c =
        taylor_two_factor(-one_plus_a2_ / a_, 1, m.q, -1 / a_, 1, m.r, order);
    const mpq_class s = ipow(a_, m.p);
    for (auto& v : c) v *= s;
    return c;
}

mpq_class ExactResidues::residue(const Mono& m, unsigned poles) const {
    mpq_class s = 0;
    if ((poles & kPoleZero) && m.r < 0) s += expand_zero(m, -m.r - 1).back();
    if ((poles & kPoleA) && m.q < 0) s += expand_a(m, -m.q - 1).back();
    if ((poles & kPoleMinusInvA) && m.p < 0) s += expand_minus_inv_a(m, -m.p - 1).back();
    return s;
}

// Inner z-contour inside the w-contour. Integrating w first leaves
// g(z) minus the principal parts of g at 0 and a, so the value is the
// residue of f times the regular part of g.
mpq_class ExactResidues::dbl(const Mono& f, const Mono& g) const {
    mpq_class total = single(f * g);
    if (g.r < 0) {
        const long K = -g.r;
        std::vector<mpq_class> g0 = expand_zero(g, K - 1);  // powers g.r .. -1
        // Res_0 [f z^k] = coefficient of z^(-1-k) in f
        long need0 = f.r < 0 ? (-1 - g.r) - f.r : -1 - g.r - f.r;
        std::vector<mpq_class> f0;
        if (need0 >= 0) f0 = expand_zero(f, need0);
        for (long i = 0; i < K; ++i) {
            if (g0[i] == 0) continue;
            const long k = g.r + i;
            const long idx = -1 - k - f.r;
            if (idx >= 0 && idx < (long)f0.size()) total -= g0[i] * f0[idx];
            if (f.q < 0) total -= g0[i] * residue(f * Mono{0, 0, k}, kPoleA);
        }
    }
    if (g.q < 0) {
        const long K = -g.q;
        std::vector<mpq_class> ga = expand_a(g, K - 1);  // powers g.q .. -1 of (z-a)
        long needa = -1 - g.q - f.q;
        std::vector<mpq_class> fa;
        if (needa >= 0) fa = expand_a(f, needa);
        for (long i = 0; i < K; ++i) {
            if (ga[i] == 0) continue;
            const long k = g.q + i;
            const long idx = -1 - k - f.q;
            if (idx >= 0 && idx < (long)fa.size()) total -= ga[i] * fa[idx];
            if (f.r < 0) total -= ga[i] * residue(f * Mono{0, k, 0}, kPoleZero);
        }
    }
    return total;
}

}  // namespace aztec
