#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>

namespace aztec {

using cd = std::complex<double>;

struct CircleContour {
    cd center{0.0, 0.0};
    double radius = 1.0;
    int nodes = 64;
};

// upward vertical line Re w = real_part, truncated to |Im w| <= half_height
struct TruncatedLine {
    double real_part = 1.0;
    double half_height = 6.0;
    int nodes = 64;
};

struct Integral {
    cd value{0.0, 0.0};
    double error = 0.0;
    int nodes = 0;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, cd last, cd previous)
        : std::runtime_error(what), last_(last), previous_(previous) {}
    cd last() const { return last_; }
    cd previous() const { return previous_; }

private:
    cd last_, previous_;
};

inline constexpr int kMaxNodes = 1 << 18;
inline constexpr int kMaxNodesDouble = 1 << 13;  // per dimension

using Fn1 = std::function<cd(cd)>;
using Fn2 = std::function<cd(cd, cd)>;
using Outer = std::variant<CircleContour, TruncatedLine>;

// (1/2 pi i) \oint f dz, trapezoid with node doubling until relative change < tol
Integral integrate_circle(const Fn1& f, CircleContour c, double tol);

// (1/2 pi i)^2 \oint_inner dz \int_outer dw f(z, w)
Integral integrate_double(const Fn2& f, CircleContour inner, const Outer& outer, double tol,
                          double margin = 0.1);

// Same, for integrands F(z) G(w) / (w - z); nodes of F and G are evaluated once per level.
Integral integrate_double_separable(const Fn1& F, const Fn1& G, CircleContour inner,
                                    const Outer& outer, double tol, double margin = 0.1);

// Upward line integral (1/2 pi i) \int f dw for integrands with Gaussian decay.
Integral integrate_gaussian_line(const Fn1& f, TruncatedLine line, double tol);

double gaussian_truncation(double tol);

}  // namespace aztec
