#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace aztec {

// (1+az)^p (z-a)^q z^r
struct Mono {
    long p = 0;
    long q = 0;
    long r = 0;
    Mono operator*(const Mono& o) const { return {p + o.p, q + o.q, r + o.r}; }
    bool operator==(const Mono&) const = default;
    std::string str() const;
};

enum Pole : unsigned { kPoleZero = 1, kPoleA = 2, kPoleMinusInvA = 4 };

// Taylor coefficients c_0..c_N of (alpha + beta e)^P (gamma + delta e)^R.
std::vector<mpq_class> taylor_two_factor(const mpq_class& alpha, const mpq_class& beta, long P,
                                         const mpq_class& gamma, const mpq_class& delta, long R,
                                         long N);

class ExactResidues {
public:
    explicit ExactResidues(mpq_class a);

    const mpq_class& a() const { return a_; }

    // Laurent coefficients at 0: entry i is the coefficient of z^(m.r + i), i = 0..order.
    std::vector<mpq_class> expand_zero(const Mono& m, long order) const;
    // Coefficients at a in powers of e = z - a: entry i multiplies e^(m.q + i).
    std::vector<mpq_class> expand_a(const Mono& m, long order) const;
    // Coefficients at -1/a in powers of e = z + 1/a: entry i multiplies e^(m.p + i).
    std::vector<mpq_class> expand_minus_inv_a(const Mono& m, long order) const;

    mpq_class residue(const Mono& m, unsigned poles) const;
    // (1/2 pi i) over a contour enclosing 0 and a but not -1/a
    mpq_class single(const Mono& m) const { return residue(m, kPoleZero | kPoleA); }
    // (1/2 pi i)^2 over w outside z, both enclosing 0 and a only: f(z) g(w) / (w - z)
    mpq_class dbl(const Mono& f, const Mono& g) const;

private:
    mpq_class a_;
    mpq_class one_plus_a2_;
};

}  // namespace aztec
