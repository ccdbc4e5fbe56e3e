#pragma once

#include <complex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "aztec/kernels_finite.hpp"
#include "aztec/kernels_limit.hpp"

namespace aztec {

// n = 2t + epsilon, a = 1 - beta / sqrt(t)
struct ScalingParams {
    long t = 9;
    int epsilon = 0;
    mpq_class beta = 0;
    int rho = 2;

    long n() const { return 2 * t + epsilon; }
    double sqrt_t() const;
    double a_double() const;
    // Needs beta = 0 or t a perfect square.
    mpq_class a_exact() const;
    DiamondParams diamond() const;
    void validate() const;
};

// Accepts "0.5", "-3/4", "2".
mpq_class parse_rational(const std::string& s);

// y sqrt(t) rounded to the nearest integer
long snap_y(double y, long t);

double prefactor_f(const ScalingParams& sp, int delta, long u1, long Y1, long u2, long Y2);

struct CTerms {
    mpq_class c1, c2, c3;  // C^(i) / f
    mpq_class sum() const { return c1 + c2 + c3; }
};
CTerms c_terms(const ExactKernels& fk, const ScalingParams& sp, int delta, long u1, long Y1, long u2,
               long Y2);
double C_term(int i, const ExactKernels& fk, const ScalingParams& sp, int delta, long u1, long Y1,
              long u2, long Y2);

struct LCReport {
    bool exact_equal = false;
    double lhs = 0;
    double rhs = 0;
    double residual = 0;
};
LCReport lc_identity(const ExactKernels& fk, const ScalingParams& sp, long u1, long Y1, long u2,
                     long Y2);

// Rescaled finite kernels at integer offsets Y = y sqrt(t).
double scaled_L(const ExactKernels& fk, const ScalingParams& sp, long u1, long Y1, long u2, long Y2);
double scaled_K(const ExactKernels& fk, const ScalingParams& sp, long u1, long Y1, long u2, long Y2);
// Right-hand side assembled from the delta = 1 terms with arguments (u2+1, Y2; u1, Y1).
double kc_from_terms(const ExactKernels& fk, const ScalingParams& sp, long u1, long Y1, long u2,
                     long Y2);

using cd = std::complex<double>;
cd est_G(double x, double t, double a, cd z);
cd est_F(double x, double t, double a, cd z);
cd est_g(double x, double beta, cd z);
cd est_f(double beta, cd z);

struct EstReport {
    double t = 0;
    int k = 0;
    double fest_margin = 0;  // min over samples of bound - 1/|F|
    bool fest_ok = false;
    double gest_C = 0;   // max sqrt(t) |G/g - 1|
    double fest2_C = 0;  // max sqrt(t) |F_0/f - 1|
    int samples = 0;
};
EstReport est_bounds_check(double A, double t, int k, double beta);

enum class LimitFamily { L, K };
std::string to_string(LimitFamily f);

struct LadderPoint {
    long u1;
    double y1;
    long u2;
    double y2;
};

struct LadderRow {
    long t = 0;
    double a = 0;
    std::vector<double> y1_snapped, y2_snapped;
    std::vector<double> scaled, limit, error;
    double max_error = 0;
    double seconds = 0;
};

struct LadderReport {
    LimitFamily family = LimitFamily::L;
    double beta = 0;
    int rho = 0;
    std::vector<LadderPoint> points;
    std::vector<LadderRow> rows;
    double slope = 0;
    bool monotone = false;  // up to 20% slack
};

LadderReport converge_tacnode(LimitFamily fam, const mpq_class& beta, int rho,
                              const std::vector<long>& ts, const std::vector<LadderPoint>& points,
                              double tol = 1e-12);

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace aztec
