#include "aztec/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace aztec {

namespace {

constexpr double kPi = std::numbers::pi;
const cd kI{0.0, 1.0};

struct Nodes {
    std::vector<cd> x;   // points
    std::vector<cd> dx;  // weights including dz
};

Nodes circle_nodes(const CircleContour& c, int N) {
    Nodes nd;
    nd.x.resize(N);
    nd.dx.resize(N);
    for (int j = 0; j < N; ++j) {
        const double th = 2.0 * kPi * j / N;
        const cd e = std::polar(1.0, th);
        nd.x[j] = c.center + c.radius * e;
        nd.dx[j] = kI * c.radius * e * (2.0 * kPi / N);
    }
    return nd;
}

Nodes line_nodes(const TruncatedLine& l, int N) {
    Nodes nd;
    nd.x.resize(N + 1);
    nd.dx.resize(N + 1);
    const double h = 2.0 * l.half_height / N;
    for (int j = 0; j <= N; ++j) {
        const double s = -l.half_height + h * j;
        nd.x[j] = cd(l.real_part, s);
        nd.dx[j] = kI * h * ((j == 0 || j == N) ? 0.5 : 1.0);
    }
    return nd;
}

Nodes outer_nodes(const Outer& o, int N) {
    if (const auto* c = std::get_if<CircleContour>(&o)) return circle_nodes(*c, N);
    return line_nodes(std::get<TruncatedLine>(o), N);
}

int start_nodes(const Outer& o) {
    if (const auto* c = std::get_if<CircleContour>(&o)) return c->nodes;
    return std::get<TruncatedLine>(o).nodes;
}

struct Level {
    cd value;
    double mass;  // sum of |terms|, for the roundoff floor
};

bool converged(const Level& cur, cd prev, double tol) {
    const double d = std::abs(cur.value - prev);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * cur.mass;
    return d <= std::max(tol * std::max(1.0, std::abs(cur.value)), floor);
}

void check_finite(cd v) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw QuadratureError("non-finite quadrature value", v, v);
}

void check_separation(const CircleContour& inner, const Outer& outer, double margin) {
    if (const auto* c = std::get_if<CircleContour>(&outer)) {
        const double gap = c->radius - inner.radius - std::abs(c->center - inner.center);
        if (gap < margin * inner.radius)
            throw QuadratureError("contour collision: inner circle not separated from outer", 0, 0);
    } else {
        const auto& l = std::get<TruncatedLine>(outer);
        const double gap = l.real_part - (inner.center.real() + inner.radius);
        if (gap < margin * inner.radius)
            throw QuadratureError("contour collision: line too close to inner circle", 0, 0);
    }
}

template <class Step>
Integral doubling(int N0, double tol, int cap, Step step) {
    int N = std::max(8, N0);
    cd prev = step(N).value;
    check_finite(prev);
    while (true) {
        N *= 2;
        if (N > cap) throw QuadratureError("quadrature did not converge", prev, prev);
        Level cur = step(N);
        check_finite(cur.value);
        if (converged(cur, prev, tol)) return {cur.value, std::abs(cur.value - prev), N};
        prev = cur.value;
    }
}

}  // namespace

double gaussian_truncation(double tol) {
    return std::max(6.0, std::sqrt(2.0 * std::log(1.0 / std::max(tol, 1e-300))));
}

Integral integrate_circle(const Fn1& f, CircleContour c, double tol) {
    if (c.radius <= 0) throw std::invalid_argument("circle radius must be positive");
    return doubling(c.nodes, tol, kMaxNodes, [&](int N) {
        Nodes nd = circle_nodes(c, N);
        cd s = 0;
        double mass = 0;
        for (int j = 0; j < N; ++j) {
            const cd t = f(nd.x[j]) * nd.dx[j];
            s += t;
            mass += std::abs(t);
        }
        return Level{s / (2.0 * kPi * kI), mass / (2.0 * kPi)};
    });
}

Integral integrate_double(const Fn2& f, CircleContour inner, const Outer& outer, double tol,
                          double margin) {
    check_separation(inner, outer, margin);
    return doubling(std::max(inner.nodes, start_nodes(outer)), tol, kMaxNodesDouble, [&](int N) {
        Nodes zn = circle_nodes(inner, N);
        Nodes wn = outer_nodes(outer, N);
        cd s = 0;
        double mass = 0;
        for (size_t k = 0; k < wn.x.size(); ++k) {
            cd row = 0;
            double rmass = 0;
            for (int j = 0; j < N; ++j) {
                const cd t = f(zn.x[j], wn.x[k]) * zn.dx[j];
                row += t;
                rmass += std::abs(t);
            }
            s += row * wn.dx[k];
            mass += rmass * std::abs(wn.dx[k]);
        }
        return Level{s / ((2.0 * kPi * kI) * (2.0 * kPi * kI)), mass / (4.0 * kPi * kPi)};
    });
}

Integral integrate_double_separable(const Fn1& F, const Fn1& G, CircleContour inner,
                                    const Outer& outer, double tol, double margin) {
    check_separation(inner, outer, margin);
    return doubling(std::max(inner.nodes, start_nodes(outer)), tol, kMaxNodesDouble, [&](int N) {
        Nodes zn = circle_nodes(inner, N);
        Nodes wn = outer_nodes(outer, N);
        std::vector<cd> fz(N), gw(wn.x.size());
        for (int j = 0; j < N; ++j) fz[j] = F(zn.x[j]) * zn.dx[j];
        for (size_t k = 0; k < wn.x.size(); ++k) gw[k] = G(wn.x[k]) * wn.dx[k];
        cd s = 0;
        double mass = 0;
        for (size_t k = 0; k < wn.x.size(); ++k) {
            if (gw[k] == cd(0)) continue;
            cd row = 0;
            double rmass = 0;
            for (int j = 0; j < N; ++j) {
                const cd t = fz[j] / (wn.x[k] - zn.x[j]);
                row += t;
                rmass += std::abs(t);
            }
            s += row * gw[k];
            mass += rmass * std::abs(gw[k]);
        }
        return Level{s / ((2.0 * kPi * kI) * (2.0 * kPi * kI)), mass / (4.0 * kPi * kPi)};
    });
}

Integral integrate_gaussian_line(const Fn1& f, TruncatedLine line, double tol) {
    line.half_height = std::max(line.half_height, gaussian_truncation(tol));
    const double T = line.half_height;
    double peak = 0;
    for (int j = -8; j <= 8; ++j) peak = std::max(peak, std::abs(f(cd(line.real_part, T * j / 8.0))));
    const double tail = std::max(std::abs(f(cd(line.real_part, T))), std::abs(f(cd(line.real_part, -T))));
    const double bound = std::max(peak, 1.0) * std::exp(-T * T / 2.0) * 1e3;
    if (!(tail <= bound))
        throw QuadratureError("integrand does not decay along the line", tail, bound);
    return doubling(line.nodes, tol, kMaxNodes, [&](int N) {
        Nodes nd = line_nodes(line, N);
        cd s = 0;
        double mass = 0;
        for (size_t j = 0; j < nd.x.size(); ++j) {
            const cd t = f(nd.x[j]) * nd.dx[j];
            s += t;
            mass += std::abs(t);
        }
        return Level{s / (2.0 * kPi * kI), mass / (2.0 * kPi)};
    });
}

}  // namespace aztec
