#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "aztec/contour.hpp"
#include "aztec/laurent.hpp"
#include "aztec/linalg.hpp"
#include "aztec/region.hpp"

namespace aztec {

enum class Method { Quadrature, Exact };
std::string to_string(Method m);
Method method_from_string(const std::string& s);

class KernelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline long floordiv(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline int neg1pow(long k) { return (k % 2 == 0) ? 1 : -1; }

struct ExactEvaluator {
    using value_type = mpq_class;
    explicit ExactEvaluator(const mpq_class& a) : R(a) {}
    mpq_class single(const Mono& m) const { return R.single(m); }
    mpq_class dbl(const Mono& f, const Mono& g) const { return R.dbl(f, g); }
    static double to_double(const mpq_class& v) { return v.get_d(); }
    static double magnitude(const mpq_class& v) { return std::abs(v.get_d()); }
    mpq_class a_value() const { return R.a(); }
    ExactResidues R;
};

// Circles centred at a/2 enclose 0 and a and avoid -1/a for every a > 0.
struct QuadEvaluator {
    using value_type = double;
    QuadEvaluator(double a, double tol);
    double single(const Mono& m) const;
    double dbl(const Mono& f, const Mono& g) const;
    static double to_double(double v) { return v; }
    static double magnitude(double v) { return std::abs(v); }
    double a_value() const { return a; }
    cd eval(const Mono& m, cd z) const;

    double a;
    double tol;
    CircleContour inner, outer;
};

template <class V>
struct ResolventOp {
    long start = 0;          // first index of the window (2m + 1)
    long size = 0;           // truncation N
    Dense<V> inv;            // (I - K_n)^{-1} on the window
    double certificate = 0;  // |change| under window doubling
};

template <class E>
class FiniteKernelsT {
public:
    using V = typename E::value_type;

    FiniteKernelsT(const DiamondParams& p, E ev);

    const DiamondParams& params() const { return p_; }
    const E& evaluator() const { return ev_; }

    V psi(long P, long Q, long x, long y) const;
    V psi_tilde(long P, long Q, long x, long y) const;
    V Kn(long j, long k) const;
    V a_func(long x, long S, long k, int form = 1) const;
    V b_func(long y, long R, long l, int form = 1) const;
    V S_kernel(long R, long x, long Q, long y) const;
    V A_func(long xi, long eta, long k) const;
    V B_func(long xi, long eta, long k) const;
    V L0(long xi1, long eta1, long xi2, long eta2) const;

    const ResolventOp<V>& resolvent(long min_size = 0) const;
    // sum_l lhs[l] ((I - K_n)^{-1} rhs)[l] over the first `count` window indices
    V inner_product(const std::vector<V>& lhs, const std::vector<V>& rhs, long count) const;
    long window_for_support(long top) const;

    V L_kernel(long xi1, long eta1, long xi2, long eta2, double* certificate = nullptr) const;
    V K_kernel(long R, long x, long Q, long y, double* certificate = nullptr) const;
    V K0(long r2, long x, long s2, long y) const;  // even times 2r, 2s
    V one_aztec(int N, long R, long x, long Q, long y) const;
    V eynard_mehta(long v1, long v2, long u1, long u2) const;  // equals -K_kernel(v1,v2;u1,u2)

private:
    DiamondParams p_;
    E ev_;
    mutable std::optional<ResolventOp<V>> res_;
    mutable std::optional<Dense<V>> em_inv_;
};

using ExactKernels = FiniteKernelsT<ExactEvaluator>;
using QuadKernels = FiniteKernelsT<QuadEvaluator>;

struct LPoint {
    long xi;
    long eta;
};

// Runtime method switch; values returned as doubles.
class FiniteKernels {
public:
    FiniteKernels(const DiamondParams& p, Method m, double tol = 1e-12);

    Method method() const { return method_; }
    const DiamondParams& params() const { return p_; }

    double L(long xi1, long eta1, long xi2, long eta2, double* cert = nullptr) const;
    double K(long R, long x, long Q, long y, double* cert = nullptr) const;
    double one_aztec(int N, long R, long x, long Q, long y) const;
    double K0(long r2, long x, long s2, long y) const;
    double eynard_mehta(long v1, long v2, long u1, long u2) const;
    double psi(long P, long Q, long x, long y) const;
    double Kn(long j, long k) const;
    double A(long xi, long eta, long k) const;
    double B(long xi, long eta, long k) const;
    double a_func(long x, long S, long k, int form) const;
    double b_func(long y, long R, long l, int form) const;

    const ExactKernels* exact() const { return exact_.get(); }
    const QuadKernels* quad() const { return quad_.get(); }

private:
    DiamondParams p_;
    Method method_;
    std::unique_ptr<ExactKernels> exact_;
    std::unique_ptr<QuadKernels> quad_;
};

// det(I - [chi L chi]) over odd eta in [k_i, l_i] on lines xi = 2 s_i
struct GapLine {
    long s;
    long k;
    long l;
};
double gap_probability(const FiniteKernels& fk, const std::vector<GapLine>& lines);
mpq_class gap_probability_exact(const ExactKernels& fk, const std::vector<GapLine>& lines);

// |L(p1,p2) - [K(eta2+1, .; eta1+2, .) - a K(eta2+1, .; eta1, .)]|
double kl_check(const FiniteKernels& fk, LPoint p1, LPoint p2);

extern template class FiniteKernelsT<ExactEvaluator>;
extern template class FiniteKernelsT<QuadEvaluator>;

}  // namespace aztec
