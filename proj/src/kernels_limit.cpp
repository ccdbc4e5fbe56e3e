#include "aztec/kernels_limit.hpp"

#include <cmath>
#include <stdexcept>

namespace aztec {

double H_m(int m, double z) {
    if (m <= 0) throw std::invalid_argument("H_m needs m >= 1");
    if (z < 0) return 0.0;
    return std::pow(z, m - 1) / std::tgamma(m);
}

namespace {
cd ipow(cd z, long e) {
    if (e < 0) return 1.0 / ipow(z, -e);
    cd out = 1.0;
    while (e > 0) {
        if (e & 1) out *= z;
        z *= z;
        e >>= 1;
    }
    return out;
}
}  // namespace

TacnodeKernel::TacnodeKernel(TacnodeParams tp, double tol, double circle_radius, double line_real)
    : tp_(tp), tol_(tol) {
    if (tp.rho < 0) throw std::invalid_argument("rho must be nonnegative");
    if (line_real <= circle_radius) throw std::invalid_argument("line must lie to the right of the circle");
    gamma0_ = {cd(0, 0), circle_radius, 64};
    L_ = {line_real, gaussian_truncation(tol), 128};
}

cd TacnodeKernel::circle(const Fn1& f) const { return integrate_circle(f, gamma0_, tol_).value; }
cd TacnodeKernel::line(const Fn1& f) const { return integrate_gaussian_line(f, L_, tol_).value; }
cd TacnodeKernel::dbl(const Fn1& f, const Fn1& g) const {
    return integrate_double_separable(f, g, gamma0_, L_, tol_).value;
}

double TacnodeKernel::gue_minor(int n, double x, int n2, double x2) const {
    double v = 0;
    if (n > n2) v -= std::ldexp(1.0, n - n2) * H_m(n - n2, x - x2);
    const cd d = dbl([&](cd z) { return std::exp(-z * z + 2.0 * z * x) * ipow(z, -n); },
                     [&](cd w) { return std::exp(w * w - 2.0 * w * x2) * ipow(w, n2); });
    return v + 2.0 * d.real();
}

double TacnodeKernel::calK(long l, long k) const {
    // the z-integrand is entire inside the circle when k >= 0
    if (k >= 0) return 0.0;
    auto key = std::make_pair(l, k);
    if (auto it = calK_cache_.find(key); it != calK_cache_.end()) return it->second;
    const double b = tp_.beta;
    const double v = dbl([&](cd z) { return std::exp(-2.0 * z * z + 4.0 * b * z) * ipow(z, k); },
                         [&](cd w) { return std::exp(2.0 * w * w - 4.0 * b * w) * ipow(w, -l - 1); })
                         .real();
    calK_cache_[key] = v;
    return v;
}

double TacnodeKernel::calA(double y, long v, long k) const {
    const double b = tp_.beta;
    const cd d = dbl([&](cd z) { return std::exp(-z * z - 2.0 * y * z) * ipow(z, -v); },
                     [&](cd w) { return std::exp(2.0 * w * w - 4.0 * b * w) * ipow(w, -k - 1); });
    const cd s = line([&](cd w) { return std::exp(w * w - 2.0 * w * (y + 2.0 * b)) * ipow(w, -(v + k + 1)); });
    return (s - d).real();
}

double TacnodeKernel::calB(double y, long u, long l) const {
    const double b = tp_.beta;
    const cd d = dbl([&](cd z) { return std::exp(-2.0 * z * z + 4.0 * z * b) * ipow(z, l); },
                     [&](cd w) { return std::exp(w * w + 2.0 * w * y) * ipow(w, u); });
    const cd s = circle([&](cd z) { return ipow(z, u + l) * std::exp(-z * z + 2.0 * z * (y + 2.0 * b)); });
    return (s - d).real();
}

double TacnodeKernel::G(long l) const {
    const double b = tp_.beta;
    return line([&](cd w) { return std::exp(2.0 * w * w - 4.0 * b * w) * ipow(w, -l - 2); }).real();
}

double TacnodeKernel::g(double y, long k) const {
    const double b = tp_.beta;
    return line([&](cd w) { return std::exp(w * w - 2.0 * (b - y) * w) * ipow(w, -k - 1); }).real();
}

double TacnodeKernel::H(long k) const {
    if (k >= 0) return 0.0;
    const double b = tp_.beta;
    return circle([&](cd z) { return ipow(z, k) * std::exp(-2.0 * z * z + 4.0 * b * z); }).real();
}

double TacnodeKernel::h(double y, long l) const {
    const double b = tp_.beta;
    return circle([&](cd z) { return ipow(z, l) * std::exp(-z * z + 2.0 * (b - y) * z); }).real();
}

const TacnodeKernel::Resolvent& TacnodeKernel::resolvent() const {
    if (res_) return *res_;
    const long start = -tp_.rho;
    auto build = [&](long N) {
        Dense<double> M(N, std::vector<double>(N, 0.0));
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < N; ++j) M[i][j] = (i == j ? 1.0 : 0.0) - calK(start + i, start + j);
        return dense_inverse(M);
    };
    long N = 32;
    Resolvent r;
    r.start = start;
    r.inv = build(N);
    r.size = N;
    const auto big = build(2 * N);
    double cert = 0;
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j) cert = std::max(cert, std::abs(big[i][j] - r.inv[i][j]));
    r.certificate = cert;
    res_ = std::move(r);
    return *res_;
}

std::vector<double> TacnodeKernel::applied_A(double y, long u, long count) const {
    // ((I - calK)^{-1} A)(lambda) for the first `count` indices; only columns below 0 and the diagonal are nonzero
    const auto& R = resolvent();
    if (count > R.size) throw std::runtime_error("tacnode resolvent window too small");
    const long start = R.start;
    const long neg = std::min<long>(tp_.rho, R.size);
    std::vector<double> Aneg(neg);
    for (long k = 0; k < neg; ++k) Aneg[k] = calA(y, u, start + k);
    std::vector<double> out(count, 0.0);
    for (long l = 0; l < count; ++l) {
        double s = 0;
        for (long k = 0; k < neg; ++k) s += R.inv[l][k] * Aneg[k];
        if (l >= neg) s += R.inv[l][l] * calA(y, u, start + l);
        out[l] = s;
    }
    return out;
}

double TacnodeKernel::perturbation(LimitPoint p1, LimitPoint p2, long terms) const {
    const double b = tp_.beta;
    const auto RA = applied_A(p1.y - b, p1.u, terms);
    double s = 0;
    for (long l = 0; l < terms; ++l) s += RA[l] * calB(p2.y - b, p2.u, l - tp_.rho);
    return 2.0 * s;
}

double TacnodeKernel::kernel(LimitPoint p1, LimitPoint p2) const {
    const double b = tp_.beta;
    const long top = std::max<long>(tp_.rho - 1, tp_.rho - 1 - p2.u);
    const double base = gue_minor(p1.u, b - p1.y, p2.u, b - p2.y);
    return base + perturbation(p1, p2, top + 1);
}

double TacnodeKernel::kernel_mirrored(LimitPoint p1, LimitPoint p2) const {
    return kernel({tp_.rho - p2.u, -p2.y}, {tp_.rho - p1.u, -p1.y});
}

}  // namespace aztec
