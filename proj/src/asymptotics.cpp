#include "aztec/asymptotics.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace aztec {

namespace {

mpq_class qpow(const mpq_class& b, long e) {
    mpq_class out = 1;
    mpq_class base = e < 0 ? mpq_class(1 / b) : b;
    for (long k = std::labs(e); k > 0; --k) out *= base;
    return out;
}

long isqrt(long t) {
    long r = std::lround(std::sqrt(double(t)));
    while (r * r > t) --r;
    while ((r + 1) * (r + 1) <= t) ++r;
    return r;
}

Mono mono(long p, long q, long r) { return Mono{p, q, r}; }

}  // namespace

double ScalingParams::sqrt_t() const { return std::sqrt(double(t)); }

double ScalingParams::a_double() const { return 1.0 - beta.get_d() / sqrt_t(); }

mpq_class ScalingParams::a_exact() const {
    if (beta == 0) return 1;
    const long r = isqrt(t);
    if (r * r != t) throw std::invalid_argument("exact a needs beta = 0 or a perfect-square t");
    mpq_class a = 1 - beta / r;
    a.canonicalize();
    return a;
}

void ScalingParams::validate() const {
    if (t <= 0) throw std::invalid_argument("t must be positive");
    if (epsilon != 0 && epsilon != 1) throw std::invalid_argument("epsilon must be 0 or 1");
    if (rho < 0) throw std::invalid_argument("rho must be nonnegative");
    if ((rho + epsilon) % 2 != 0) throw std::invalid_argument("epsilon and rho must have the same parity");
    if (beta * beta >= t) throw std::invalid_argument("a > 0 needs t > beta^2");
}

DiamondParams ScalingParams::diamond() const {
    validate();
    return DiamondParams::make(int(n()), rho, a_exact());
}

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    if (s.find('/') != std::string::npos) {
        mpq_class q(s, 10);
        q.canonicalize();
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        return q;
    }
    std::string digits = s;
    long scale = 0;
    if (auto dot = s.find('.'); dot != std::string::npos) {
        scale = long(s.size() - dot - 1);
        digits = s.substr(0, dot) + s.substr(dot + 1);
    }
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    mpz_class den = 1;
    for (long i = 0; i < scale; ++i) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

long snap_y(double y, long t) { return std::lround(y * std::sqrt(double(t))); }

double prefactor_f(const ScalingParams& sp, int delta, long u1, long Y1, long u2, long Y2) {
    const double st = sp.sqrt_t(), a = sp.a_double();
    double f = std::pow(-a, double(Y2 - Y1)) * std::pow(-st, double(u2 - u1)) * std::pow(st, 1 - 2 * delta);
    return delta ? -f : f;
}

CTerms c_terms(const ExactKernels& fk, const ScalingParams& sp, int delta, long u1, long Y1, long u2,
               long Y2) {
    if (delta != 0 && delta != 1) throw std::invalid_argument("delta must be 0 or 1");
    const auto& ev = fk.evaluator();
    const long t = sp.t, e = sp.epsilon, d = delta;
    const mpq_class a = fk.params().a;
    const mpq_class ap1 = 1 + a * a;
    CTerms c;
    const bool ind = delta == 0 ? (u2 < u1) : (Y1 < Y2);
    if (ind) c.c1 = -ap1 * ev.single(mono(Y1 - Y2 - 1 + d, -(Y1 - Y2 + 1 - d), u2 - u1));
    const Mono fz = mono(t + Y1 - 1 + d, t - Y1 + e + d, -u1);
    c.c2 = ap1 * ev.dbl(fz, mono(-(t + Y2), -(t - Y2 + 1 + e), u2));

    const long xi2 = 4 * t + 2 * e - 2 * u2, eta2 = 2 * t + 2 * Y2 - 1;
    const long N = 2 * fk.window_for_support(std::max<long>(fk.params().n, xi2 / 2));
    const long start = 2 * fk.params().m() + 1;
    std::vector<mpq_class> Ad(N), B(N);
    for (long i = 0; i < N; ++i) {
        const long k = start + i;
        mpq_class v = ev.dbl(fz, mono(-(2 * t + e), -(2 * t + e + 1), 2 * t + e - k)) -
                      ev.single(mono(-(t + e - Y1 + 1 - d), -(t + Y1 + 1 - d), 2 * t + e - u1 - k));
        Ad[i] = neg1pow(k) > 0 ? v : mpq_class(-v);
        B[i] = fk.B_func(xi2, eta2, k);
    }
    c.c3 = -ap1 * fk.inner_product(B, Ad, N);
    return c;
}

double C_term(int i, const ExactKernels& fk, const ScalingParams& sp, int delta, long u1, long Y1,
              long u2, long Y2) {
    const CTerms c = c_terms(fk, sp, delta, u1, Y1, u2, Y2);
    const double f = prefactor_f(sp, delta, u1, Y1, u2, Y2);
    switch (i) {
        case 1: return f * c.c1.get_d();
        case 2: return f * c.c2.get_d();
        case 3: return f * c.c3.get_d();
    }
    throw std::invalid_argument("C term index must be 1, 2 or 3");
}

LCReport lc_identity(const ExactKernels& fk, const ScalingParams& sp, long u1, long Y1, long u2,
                     long Y2) {
    const long t = sp.t, e = sp.epsilon;
    const mpq_class L = fk.L_kernel(4 * t + 2 * e - 2 * u1, 2 * t + 2 * Y1 - 1, 4 * t + 2 * e - 2 * u2,
                                    2 * t + 2 * Y2 - 1);
    const CTerms c = c_terms(fk, sp, 0, u1, Y1, u2, Y2);
    LCReport r;
    // both sides carry f a^{2(Y1-Y2)}
    r.exact_equal = (L == c.sum());
    const double w = prefactor_f(sp, 0, u1, Y1, u2, Y2) * std::pow(sp.a_double(), 2.0 * double(Y1 - Y2));
    r.lhs = scaled_L(fk, sp, u1, Y1, u2, Y2);
    r.rhs = w * c.sum().get_d();
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

double scaled_L(const ExactKernels& fk, const ScalingParams& sp, long u1, long Y1, long u2, long Y2) {
    const long t = sp.t, e = sp.epsilon;
    const mpq_class L = fk.L_kernel(4 * t + 2 * e - 2 * u1, 2 * t + 2 * Y1 - 1, 4 * t + 2 * e - 2 * u2,
                                    2 * t + 2 * Y2 - 1);
    const mpq_class pa = qpow(-fk.params().a, Y1 - Y2) * L;
    const double st = sp.sqrt_t();
    return pa.get_d() * std::pow(-st, double(u2 - u1)) * st;
}

double scaled_K(const ExactKernels& fk, const ScalingParams& sp, long u1, long Y1, long u2, long Y2) {
    const long t = sp.t, e = sp.epsilon, rho = sp.rho;
    const long X1 = -rho + 2 * u1 - e + 2 * Y1, X2 = -rho + 2 * u2 - e + 2 * Y2;
    if (X1 % 2 != 0 || X2 % 2 != 0) throw std::invalid_argument("scaled K needs rho + epsilon even");
    const long x1 = X1 / 2, x2 = X2 / 2, r1 = t + Y1, r2 = t + Y2;
    mpq_class K = fk.K_kernel(2 * r1, x1, 2 * r2, x2);
    K *= qpow(fk.params().a, r2 - r1);
    if (neg1pow(x1 - x2) < 0) K = -K;
    // 2/sqrt(t) thinning, sqrt(t) density
    return 2.0 * K.get_d() * std::pow(sp.sqrt_t(), double(x1 - x2 + r2 - r1));
}

double kc_from_terms(const ExactKernels& fk, const ScalingParams& sp, long u1, long Y1, long u2,
                     long Y2) {
    const mpq_class a = fk.params().a;
    const CTerms c = c_terms(fk, sp, 1, u2 + 1, Y2, u1, Y1);
    const mpq_class q = 2 / (1 + a * a) * qpow(a, 2 * (Y2 - Y1)) * c.sum();
    return prefactor_f(sp, 1, u2 + 1, Y2, u1, Y1) * q.get_d();
}

cd est_G(double x, double t, double a, cd z) {
    const double st = std::sqrt(t);
    return std::exp(x * st * (std::log(1.0 / a - z / st) - std::log(a + z / st)));
}

cd est_F(double x, double t, double a, cd z) {
    const double st = std::sqrt(t);
    return std::exp((t + x * st) * std::log(1.0 / a - z / st) + (t - x * st) * std::log(a + z / st));
}

cd est_g(double x, double beta, cd z) { return std::exp(2.0 * x * (beta - z)); }

cd est_f(double beta, cd z) { return std::exp(2.0 * beta * z - z * z); }

EstReport est_bounds_check(double A, double t, int k, double beta) {
    if (t <= beta * beta) throw std::invalid_argument("t must exceed beta^2");
    const double st = std::sqrt(t), a = 1.0 - beta / st;
    EstReport r;
    r.t = t;
    r.k = k;
    r.fest_margin = INFINITY;
    const int nx = 9, ns = 401;
    double kfact = 1;
    for (int i = 2; i <= k; ++i) kfact *= i;
    for (int ix = 0; ix < nx; ++ix) {
        const double x = -A + 2 * A * ix / (nx - 1);
        for (int is = 0; is < ns; ++is) {
            const double s = -10.0 + 20.0 * is / (ns - 1);
            const double bound = 1.0 / (1.0 + std::pow(s, 2 * k) / (std::ldexp(1.0, k) * kfact));
            const double v = 1.0 / std::abs(est_F(x, t, a, cd(beta, s)));
            r.fest_margin = std::min(r.fest_margin, bound - v);
            ++r.samples;
        }
    }
    r.fest_ok = r.fest_margin >= 0;

    std::vector<cd> nodes;
    const int nc = 256;
    for (int j = 0; j < nc; ++j) nodes.push_back(std::polar(1.0, 2 * M_PI * j / nc));
    const double c = std::max(beta, 0.0) + 1.5;
    const int ns2 = 64;
    for (int j = 0; j <= ns2; ++j) {
        const double h = double(j) / ns2;
        nodes.push_back(cd(beta + (c - beta) * h, -2.0));
        nodes.push_back(cd(c, -2.0 + 4.0 * h));
        nodes.push_back(cd(c + (beta - c) * h, 2.0));
    }
    for (const cd& z : nodes) {
        for (int ix = 0; ix < nx; ++ix) {
            const double x = -A + 2 * A * ix / (nx - 1);
            r.gest_C = std::max(r.gest_C, st * std::abs(est_G(x, t, a, z) / est_g(x, beta, z) - 1.0));
        }
        r.fest2_C = std::max(r.fest2_C, st * std::abs(est_F(0, t, a, z) / est_f(beta, z) - 1.0));
        ++r.samples;
    }
    return r;
}

std::string to_string(LimitFamily f) { return f == LimitFamily::L ? "L" : "K"; }

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs two or more points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

LadderReport converge_tacnode(LimitFamily fam, const mpq_class& beta, int rho,
                              const std::vector<long>& ts, const std::vector<LadderPoint>& points,
                              double tol) {
    LadderReport rep;
    rep.family = fam;
    rep.beta = beta.get_d();
    rep.rho = rho;
    rep.points = points;
    TacnodeKernel T({beta.get_d(), rho}, tol);
    std::vector<double> tv, ev;
    for (long t : ts) {
        const auto t0 = std::chrono::steady_clock::now();
        ScalingParams sp{t, rho % 2, beta, rho};
        sp.validate();
        ExactKernels fk(sp.diamond(), ExactEvaluator(sp.a_exact()));
        LadderRow row;
        row.t = t;
        row.a = sp.a_double();
        for (const auto& p : points) {
            const long Y1 = snap_y(p.y1, t), Y2 = snap_y(p.y2, t);
            const double y1 = Y1 / sp.sqrt_t(), y2 = Y2 / sp.sqrt_t();
            double s, lim;
            if (fam == LimitFamily::L) {
                s = scaled_L(fk, sp, p.u1, Y1, p.u2, Y2);
                lim = T.kernel({int(p.u1), y1}, {int(p.u2), y2});
            } else {
                s = scaled_K(fk, sp, p.u1, Y1, p.u2, Y2);
                lim = T.kernel({int(p.u2 + 1), y2}, {int(p.u1), y1});
            }
            row.y1_snapped.push_back(y1);
            row.y2_snapped.push_back(y2);
            row.scaled.push_back(s);
            row.limit.push_back(lim);
            row.error.push_back(std::abs(s - lim));
            row.max_error = std::max(row.max_error, row.error.back());
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        tv.push_back(double(t));
        ev.push_back(row.max_error);
        rep.rows.push_back(std::move(row));
    }
    rep.monotone = true;
    for (size_t i = 1; i < ev.size(); ++i)
        if (ev[i] > 1.2 * ev[i - 1]) rep.monotone = false;
    if (tv.size() >= 2) rep.slope = loglog_slope(tv, ev);
    return rep;
}

}  // namespace aztec
