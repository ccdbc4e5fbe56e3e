#pragma once

#include <map>
#include <optional>
#include <vector>

#include "aztec/contour.hpp"
#include "aztec/linalg.hpp"

namespace aztec {

struct TacnodeParams {
    double beta = 0;
    int rho = 2;
};

struct LimitPoint {
    int u;
    double y;
};

// z^{m-1}/(m-1)! for z >= 0, else 0
double H_m(int m, double z);

class TacnodeKernel {
public:
    TacnodeKernel(TacnodeParams tp, double tol = 1e-12, double circle_radius = 0.5, double line_real = 1.0);

    const TacnodeParams& params() const { return tp_; }

    double gue_minor(int n, double x, int n2, double x2) const;

    double calK(long lambda, long kappa) const;
    double calA(double y, long v, long kappa) const;
    double calB(double y, long u, long lambda) const;

    double G(long lambda) const;
    double g(double y, long kappa) const;
    double H(long kappa) const;
    double h(double y, long lambda) const;

    struct Resolvent {
        long start = 0;
        long size = 0;
        Dense<double> inv;
        double certificate = 0;
    };
    // (I - calK)^{-1} on indices -rho, -rho+1, ...
    const Resolvent& resolvent() const;

    // Finite sum up to max(rho-1, rho-1-u2) above -rho.
    double kernel(LimitPoint p1, LimitPoint p2) const;
    // Same expression after the involution u1 <-> rho-u2, y1 <-> -y2.
    double kernel_mirrored(LimitPoint p1, LimitPoint p2) const;
    // Perturbation summed over a window of the given size; used to show the tail is exactly zero.
    double perturbation(LimitPoint p1, LimitPoint p2, long terms) const;

private:
    cd circle(const Fn1& f) const;
    cd line(const Fn1& f) const;
    cd dbl(const Fn1& f, const Fn1& g) const;
    std::vector<double> applied_A(double y, long u, long count) const;

    TacnodeParams tp_;
    double tol_;
    CircleContour gamma0_;
    TruncatedLine L_;
    mutable std::optional<Resolvent> res_;
    mutable std::map<std::pair<long, long>, double> calK_cache_;
};

}  // namespace aztec
