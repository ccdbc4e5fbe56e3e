#include "aztec/kernels_finite.hpp"

#include <algorithm>
#include <cmath>

namespace aztec {

std::string to_string(Method m) { return m == Method::Exact ? "exact" : "quadrature"; }

Method method_from_string(const std::string& s) {
    if (s == "exact") return Method::Exact;
    if (s == "quadrature" || s == "quad") return Method::Quadrature;
    throw std::invalid_argument("unknown method: " + s);
}

QuadEvaluator::QuadEvaluator(double a_, double tol_) : a(a_), tol(tol_) {
    if (a <= 0) throw std::invalid_argument("a must be positive");
    inner = {cd(a / 2, 0), a / 2 + 1.0 / (3 * a), 64};
    outer = {cd(a / 2, 0), a / 2 + 2.0 / (3 * a), 64};
}

namespace {
cd cpow(cd z, long e) {
    if (e < 0) return 1.0 / cpow(z, -e);
    cd out = 1.0;
    while (e > 0) {
        if (e & 1) out *= z;
        z *= z;
        e >>= 1;
    }
    return out;
}
}  // namespace

cd QuadEvaluator::eval(const Mono& m, cd z) const {
    return cpow(1.0 + a * z, m.p) * cpow(z - a, m.q) * cpow(z, m.r);
}

double QuadEvaluator::single(const Mono& m) const {
    return integrate_circle([&](cd z) { return eval(m, z); }, inner, tol).value.real();
}

double QuadEvaluator::dbl(const Mono& f, const Mono& g) const {
    return integrate_double_separable([&](cd z) { return eval(f, z); },
                                      [&](cd w) { return eval(g, w); }, inner, outer, tol)
        .value.real();
}

template <class E>
FiniteKernelsT<E>::FiniteKernelsT(const DiamondParams& p, E ev) : p_(p), ev_(std::move(ev)) {
    p_.validate();
}

template <class E>
auto FiniteKernelsT<E>::psi(long P, long Q, long x, long y) const -> V {
    const long r = floordiv(P, 2), e1 = P - 2 * r;
    const long s = floordiv(Q, 2), e2 = Q - 2 * s;
    const long d = s - r + e2 - e1;
    return ev_.single(Mono{s - r, -d, x - y - 1 + d});
}

template <class E>
auto FiniteKernelsT<E>::psi_tilde(long P, long Q, long x, long y) const -> V {
    if (P < Q) return psi(P, Q, x, y);
    return V(0);
}

template <class E>
auto FiniteKernelsT<E>::Kn(long j, long k) const -> V {
    const long n = p_.n;
    if (k >= n + 1) return V(0);
    V v = ev_.dbl(Mono{n, n + 1, k - n - 1}, Mono{-n, -n - 1, n - j});
    return neg1pow(j + k) > 0 ? v : V(0) - v;
}

template <class E>
auto FiniteKernelsT<E>::a_func(long x, long S, long k, int form) const -> V {
    const long n = p_.n, m = p_.m();
    const long ss = floordiv(S, 2), e1 = S - 2 * ss;
    const Mono f{-n, -(n + 1), n - k};
    const Mono g{ss, n - ss + 1 - e1, x + m - (n - ss + 1 - e1)};
    const int sg = neg1pow(k - x);
    if (form == 1) {
        V v = ev_.dbl(f, g);
        return sg > 0 ? V(0) - v : v;
    }
    V v = ev_.dbl(g, f) - ev_.single(Mono{-(n - ss), -(ss + e1), x + m - k - 1 + ss + e1});
    return sg > 0 ? v : V(0) - v;
}

template <class E>
auto FiniteKernelsT<E>::b_func(long y, long R, long l, int form) const -> V {
    const long n = p_.n, m = p_.m();
    const long r = floordiv(R, 2), e2 = R - 2 * r;
    const Mono f{-r, -(n - r + 1 - e2), -(y + m + 1) + n - r + 1 - e2};
    const Mono g{n, n + 1, l - n - 1};
    const int sg = neg1pow(l - y);
    V v;
    if (form == 1) {
        v = ev_.dbl(f, g);
    } else {
        v = ev_.single(Mono{n - r, r + e2, -(r + e2) - (y + m - l + 1)}) - ev_.dbl(g, f);
    }
    return sg > 0 ? v : V(0) - v;
}

template <class E>
auto FiniteKernelsT<E>::S_kernel(long R, long x, long Q, long y) const -> V {
    const long n = p_.n, m = p_.m();
    const long r = floordiv(R, 2), e1 = R - 2 * r;
    const long ss = floordiv(Q, 2), e2 = Q - 2 * ss;
    const Mono f{ss, n - ss + 1 - e2, m - y - (n - ss + 1 - e2)};
    const Mono g{-r, -(n - r + 1 - e1), x - m - 1 + n - r + 1 - e1};
    V v = ev_.dbl(f, g);
    return neg1pow(x - y) > 0 ? v : V(0) - v;
}

template <class E>
auto FiniteKernelsT<E>::A_func(long xi, long eta, long k) const -> V {
    const long n = p_.n;
    V v = ev_.dbl(Mono{(eta - 1) / 2, n - (eta + 1) / 2, xi / 2 - n}, Mono{-n, -(n + 1), n - k}) -
          ev_.single(Mono{-(n - (eta - 1) / 2), -(eta + 3) / 2, xi / 2 - k});
    return neg1pow(k) > 0 ? v : V(0) - v;
}

template <class E>
auto FiniteKernelsT<E>::B_func(long xi, long eta, long k) const -> V {
    const long n = p_.n;
    V v = ev_.single(Mono{n - (eta + 1) / 2, (eta + 1) / 2, k - 1 - xi / 2}) -
          ev_.dbl(Mono{n, n + 1, k - n - 1}, Mono{-(eta + 1) / 2, -(n - (eta - 1) / 2), n - xi / 2});
    return neg1pow(k) > 0 ? v : V(0) - v;
}

template <class E>
auto FiniteKernelsT<E>::L0(long xi1, long eta1, long xi2, long eta2) const -> V {
    const long n = p_.n;
    V v = ev_.dbl(Mono{(eta1 - 1) / 2, n - (eta1 + 1) / 2, xi1 / 2 - n},
                  Mono{-(eta2 + 1) / 2, -(n - (eta2 - 1) / 2), n - xi2 / 2});
    if (xi1 < xi2) {
        const long d = (eta1 - eta2) / 2;
        v = v - ev_.single(Mono{d - 1, -(d + 1), (xi1 - xi2) / 2});
    }
    return v;
}

template <class E>
long FiniteKernelsT<E>::window_for_support(long top) const {
    return std::max<long>(p_.rho, top - 2 * p_.m());
}

template <class E>
auto FiniteKernelsT<E>::resolvent(long min_size) const -> const ResolventOp<V>& {
    if (res_ && res_->size >= min_size) return *res_;
    const long start = 2 * p_.m() + 1;
    auto build = [&](long N) {
        Dense<V> A(N, std::vector<V>(N, V(0)));
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < N; ++j) {
                V kij = Kn(start + i, start + j);
                A[i][j] = (i == j ? V(1) : V(0)) - kij;
            }
        return dense_inverse(A);
    };
    long N = std::max<long>(8, 2 * p_.rho);
    while (2 * N < min_size) N *= 2;
    ResolventOp<V> op;
    op.start = start;
    op.size = 2 * N;
    op.inv = build(2 * N);
    Dense<V> small = build(N);
    double cert = 0;
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j)
            cert = std::max(cert, E::magnitude(small[i][j] - op.inv[i][j]));
    op.certificate = cert;
    res_ = std::move(op);
    return *res_;
}

template <class E>
auto FiniteKernelsT<E>::inner_product(const std::vector<V>& lhs, const std::vector<V>& rhs,
                                      long count) const -> V {
    const auto& R = resolvent(count);
    V total = V(0);
    for (long l = 0; l < count; ++l) {
        if (lhs[l] == V(0)) continue;
        V row = V(0);
        for (long k = 0; k < count; ++k)
            if (!(R.inv[l][k] == V(0))) row = row + R.inv[l][k] * rhs[k];
        total = total + lhs[l] * row;
    }
    return total;
}

template <class E>
auto FiniteKernelsT<E>::L_kernel(long xi1, long eta1, long xi2, long eta2, double* certificate) const
    -> V {
    const long n = p_.n;
    const long N = window_for_support(std::max(n, xi2 / 2));
    const long start = 2 * p_.m() + 1;
    std::vector<V> A(2 * N), B(2 * N);
    for (long i = 0; i < 2 * N; ++i) {
        A[i] = A_func(xi1, eta1, start + i);
        B[i] = B_func(xi2, eta2, start + i);
    }
    V full = inner_product(B, A, 2 * N);
    if (certificate) *certificate = E::magnitude(full - inner_product(B, A, N));
    V ap1 = V(1) + ev_.a_value() * ev_.a_value();
    return ap1 * (L0(xi1, eta1, xi2, eta2) - full);
}

template <class E>
auto FiniteKernelsT<E>::K_kernel(long R, long x, long Q, long y, double* certificate) const -> V {
    const long n = p_.n, m = p_.m();
    const long r = floordiv(R, 2), e1 = R - 2 * r;
    V val = V(0);
    if (Q < R) val = V(0) - psi(R, Q, x, y);
    const int sg = neg1pow(x - y);
    V s = S_kernel(R, x, Q, y);
    val = sg > 0 ? V(val + s) : V(val - s);
    const long N = window_for_support(std::max(n, m + r + e1 - x));
    const long start = 2 * m + 1;
    std::vector<V> a(2 * N), b(2 * N);
    for (long i = 0; i < 2 * N; ++i) {
        a[i] = a_func(-y, Q, start + i);
        b[i] = b_func(-x, R, start + i);
    }
    V full = inner_product(b, a, 2 * N);
    if (certificate) *certificate = E::magnitude(full - inner_product(b, a, N));
    return sg > 0 ? V(val - full) : V(val + full);
}

template <class E>
auto FiniteKernelsT<E>::one_aztec(int N, long R, long x, long Q, long y) const -> V {
    if (R % 2 != 0 || Q % 2 != 0) throw KernelError("one-Aztec kernel takes even times");
    const long r = R / 2, s = Q / 2;
    V v = ev_.dbl(Mono{N - s, s, y - 1 - s}, Mono{-(N - r), -r, r - x});
    if (neg1pow(x - y) < 0) v = V(0) - v;
    if (s > r) v = v - psi(R, Q, x, y);
    return v;
}

template <class E>
auto FiniteKernelsT<E>::K0(long r2, long x, long s2, long y) const -> V {
    const long n = p_.n, m = p_.m();
    const long r = r2 / 2, s = s2 / 2;
    return one_aztec(n + 1, 2 * (n - r + 1), m - x + 1, 2 * (n - s + 1), m - y + 1);
}

template <class E>
auto FiniteKernelsT<E>::eynard_mehta(long v1, long v2, long u1, long u2) const -> V {
    const long n = p_.n, m = p_.m();
    const long D = 2 * m + 1;
    if (!em_inv_) {
        Dense<V> A(D, std::vector<V>(D));
        for (long i = 1; i <= D; ++i)
            for (long j = 1; j <= D; ++j) A[i - 1][j - 1] = psi_tilde(0, 2 * n + 1, i - m - 1, j - m - 1);
        em_inv_ = dense_inverse(A);
    }
    const Dense<V>& Ai = *em_inv_;
    std::vector<V> left(D), right(D);
    for (long i = 1; i <= D; ++i) {
        left[i - 1] = psi_tilde(v1, 2 * n + 1, v2, i - m - 1);
        right[i - 1] = psi_tilde(0, u1, i - m - 1, u2);
    }
    V total = V(0) - psi_tilde(v1, u1, v2, u2);
    for (long i = 0; i < D; ++i) {
        if (left[i] == V(0)) continue;
        for (long j = 0; j < D; ++j) total = total + left[i] * Ai[i][j] * right[j];
    }
    return total;
}

template class FiniteKernelsT<ExactEvaluator>;
template class FiniteKernelsT<QuadEvaluator>;

FiniteKernels::FiniteKernels(const DiamondParams& p, Method m, double tol) : p_(p), method_(m) {
    p_.validate();
    if (m == Method::Exact)
        exact_ = std::make_unique<ExactKernels>(p_, ExactEvaluator(p_.a));
    else
        quad_ = std::make_unique<QuadKernels>(p_, QuadEvaluator(p_.a_double(), tol));
}

#define AZTEC_DISPATCH(call) \
    (exact_ ? ExactEvaluator::to_double(exact_->call) : quad_->call)

double FiniteKernels::L(long xi1, long eta1, long xi2, long eta2, double* cert) const {
    return AZTEC_DISPATCH(L_kernel(xi1, eta1, xi2, eta2, cert));
}
double FiniteKernels::K(long R, long x, long Q, long y, double* cert) const {
    return AZTEC_DISPATCH(K_kernel(R, x, Q, y, cert));
}
double FiniteKernels::one_aztec(int N, long R, long x, long Q, long y) const {
    return AZTEC_DISPATCH(one_aztec(N, R, x, Q, y));
}
double FiniteKernels::K0(long r2, long x, long s2, long y) const { return AZTEC_DISPATCH(K0(r2, x, s2, y)); }
double FiniteKernels::eynard_mehta(long v1, long v2, long u1, long u2) const {
    return AZTEC_DISPATCH(eynard_mehta(v1, v2, u1, u2));
}
double FiniteKernels::psi(long P, long Q, long x, long y) const { return AZTEC_DISPATCH(psi(P, Q, x, y)); }
double FiniteKernels::Kn(long j, long k) const { return AZTEC_DISPATCH(Kn(j, k)); }
double FiniteKernels::A(long xi, long eta, long k) const { return AZTEC_DISPATCH(A_func(xi, eta, k)); }
double FiniteKernels::B(long xi, long eta, long k) const { return AZTEC_DISPATCH(B_func(xi, eta, k)); }
double FiniteKernels::a_func(long x, long S, long k, int form) const {
    return AZTEC_DISPATCH(a_func(x, S, k, form));
}
double FiniteKernels::b_func(long y, long R, long l, int form) const {
    return AZTEC_DISPATCH(b_func(y, R, l, form));
}

#undef AZTEC_DISPATCH

namespace {

std::vector<LPoint> gap_points(const DiamondParams& p, const std::vector<GapLine>& lines) {
    DualGraph g(p);
    std::vector<LPoint> pts;
    for (const auto& L : lines) {
        long k = L.k % 2 == 0 ? L.k + 1 : L.k;
        for (long eta = k; eta <= L.l; eta += 2)
            if (g.is_black({int(2 * L.s), int(eta)})) pts.push_back({2 * L.s, eta});
    }
    return pts;
}

}  // namespace

double gap_probability(const FiniteKernels& fk, const std::vector<GapLine>& lines) {
    auto pts = gap_points(fk.params(), lines);
    if (pts.empty()) return 1.0;
    Dense<double> M(pts.size(), std::vector<double>(pts.size()));
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j)
            M[i][j] = (i == j ? 1.0 : 0.0) - fk.L(pts[i].xi, pts[i].eta, pts[j].xi, pts[j].eta);
    return dense_det(M);
}

mpq_class gap_probability_exact(const ExactKernels& fk, const std::vector<GapLine>& lines) {
    auto pts = gap_points(fk.params(), lines);
    if (pts.empty()) return 1;
    Dense<mpq_class> M(pts.size(), std::vector<mpq_class>(pts.size()));
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j)
            M[i][j] = mpq_class(i == j ? 1 : 0) - fk.L_kernel(pts[i].xi, pts[i].eta, pts[j].xi, pts[j].eta);
    return exact_det(M);
}

double kl_check(const FiniteKernels& fk, LPoint p1, LPoint p2) {
    const long M = 2 * fk.params().m() + 1;
    const double a = fk.params().a_double();
    const long u = (p2.eta - p2.xi + M) / 2;
    const double rhs = fk.K(p2.eta + 1, u, p1.eta + 2, (p1.eta - p1.xi + M) / 2) -
                       a * fk.K(p2.eta + 1, u, p1.eta, (p1.eta - p1.xi + M - 2) / 2);
    return std::abs(fk.L(p1.xi, p1.eta, p2.xi, p2.eta) - rhs);
}

}  // namespace aztec
