#include "aztec/render.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace aztec {

const char* domino_color(DominoType d) {
    switch (d) {
        case DominoType::North: return "yellow";
        case DominoType::South: return "green";
        case DominoType::East: return "blue";
        case DominoType::West: return "red";
    }
    return "gray";
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

struct Frame {
    int xmin = INT_MAX, xmax = INT_MIN, ymin = INT_MAX, ymax = INT_MIN;
    double unit = 6, margin = 0;
    double px(double X) const { return (X - xmin + 1) * unit + unit; }
    double py(double Y) const { return (ymax + 1 - Y) * unit + unit; }
};

}  // namespace

std::string render_tiling_svg(const DualGraph& g, const Tiling& t, const RenderStyle& st) {
    validate_tiling(g, t);
    Frame F;
    F.unit = st.unit;
    auto grow = [&](KCoord c) {
        const int X = c.xi + c.eta, Y = c.eta - c.xi;
        F.xmin = std::min(F.xmin, X);
        F.xmax = std::max(F.xmax, X);
        F.ymin = std::min(F.ymin, Y);
        F.ymax = std::max(F.ymax, Y);
    };
    for (const auto& b : g.blacks()) grow(b);
    for (const auto& w : g.whites()) grow(w);
    const double board_w = (F.xmax - F.xmin + 2) * F.unit + 2 * F.unit;
    const double board_h = (F.ymax - F.ymin + 2) * F.unit + 2 * F.unit;
    const double right = st.line_counts ? 14 * F.unit : 0;
    const double bottom = st.legend ? 6 * F.unit : 0;
    const double W = board_w + right, H = board_h + bottom;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\"" << num(H)
       << "\" viewBox=\"0 0 " << num(W) << " " << num(H) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << num(W) << "\" height=\"" << num(H) << "\" fill=\"white\"/>\n";

    os << "<g id=\"dominoes\" stroke=\"black\" stroke-width=\"" << num(F.unit / 6) << "\">\n";
    const auto& B = g.blacks();
    const auto& Wh = g.whites();
    for (size_t b = 0; b < B.size(); ++b) {
        const KCoord bc = B[b], wc = Wh[t.match[b]];
        const DominoType d = domino_type(bc, wc);
        const int X1 = bc.xi + bc.eta, Y1 = bc.eta - bc.xi, X2 = wc.xi + wc.eta, Y2 = wc.eta - wc.xi;
        const double x0 = F.px(std::min(X1, X2) - 1), x1 = F.px(std::max(X1, X2) + 1);
        const double y0 = F.py(std::max(Y1, Y2) + 1), y1 = F.py(std::min(Y1, Y2) - 1);
        os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0)
           << "\" height=\"" << num(y1 - y0) << "\" fill=\"" << domino_color(d) << "\"/>\n";
    }
    os << "</g>\n";

    if (st.level_lines) {
        const HeightFunction h = height_function(g, t);
        os << "<g id=\"level-lines\" stroke=\"black\" stroke-width=\"" << num(F.unit / 4)
           << "\" fill=\"none\">\n";
        auto squares = B;
        squares.insert(squares.end(), Wh.begin(), Wh.end());
        std::sort(squares.begin(), squares.end());
        for (const KCoord& s : squares) {
            // corners in cyclic order
            const KCoord c[4] = {{s.xi + 1, s.eta}, {s.xi, s.eta + 1}, {s.xi - 1, s.eta}, {s.xi, s.eta - 1}};
            int hv[4];
            bool ok = true;
            for (int i = 0; i < 4; ++i) {
                auto it = h.find(c[i]);
                if (it == h.end()) {
                    ok = false;
                    break;
                }
                hv[i] = it->second;
            }
            if (!ok) continue;
            const int lo = *std::min_element(hv, hv + 4), hi = *std::max_element(hv, hv + 4);
            for (int k = lo; k < hi; ++k) {
                std::vector<std::pair<double, double>> pts;
                for (int i = 0; i < 4; ++i) {
                    const int a = hv[i], b = hv[(i + 1) % 4];
                    if ((a <= k) == (b <= k)) continue;
                    const double f = (k + 0.5 - a) / double(b - a);
                    const KCoord p = c[i], q = c[(i + 1) % 4];
                    const double X = (p.xi + p.eta) + f * ((q.xi + q.eta) - (p.xi + p.eta));
                    const double Y = (p.eta - p.xi) + f * ((q.eta - q.xi) - (p.eta - p.xi));
                    pts.push_back({F.px(X), F.py(Y)});
                }
                for (size_t i = 0; i + 1 < pts.size(); i += 2)
                    os << "<line x1=\"" << num(pts[i].first) << "\" y1=\"" << num(pts[i].second) << "\" x2=\""
                       << num(pts[i + 1].first) << "\" y2=\"" << num(pts[i + 1].second) << "\"/>\n";
            }
        }
        os << "</g>\n";
    }

    auto dots = [&](const ParticleSet& ps, const char* id, const char* fill) {
        os << "<g id=\"" << id << "\" stroke=\"black\" stroke-width=\"" << num(F.unit / 8) << "\">\n";
        for (const auto& q : ps)
            os << "<circle cx=\"" << num(F.px(q.square.xi + q.square.eta)) << "\" cy=\""
               << num(F.py(q.square.eta - q.square.xi)) << "\" r=\"" << num(F.unit / 3) << "\" fill=\""
               << (q.color == Color::Blue ? fill : "white") << "\"/>\n";
        os << "</g>\n";
    };
    if (st.L_particles || st.line_counts) {
        const ParticleSet L = extract_L_particles(g, t);
        if (st.L_particles) dots(L, "L-particles", "black");
        if (st.line_counts) {
            std::map<int, std::pair<int, int>> counts;
            for (const auto& q : L) (q.color == Color::Blue ? counts[q.line].first : counts[q.line].second)++;
            os << "<g id=\"line-counts\" font-family=\"monospace\" font-size=\"" << num(1.6 * F.unit) << "\">\n";
            int row = 0;
            for (const auto& [s, bc] : counts) {
                os << "<text x=\"" << num(board_w + F.unit) << "\" y=\"" << num(2 * F.unit + 2 * F.unit * row++)
                   << "\">s=" << s << " blue=" << bc.first << " red=" << bc.second << "</text>\n";
            }
            os << "</g>\n";
        }
    }
    if (st.K_particles) dots(extract_K_particles(g, t), "K-particles", "gray");

    if (st.legend) {
        os << "<g id=\"legend\" font-family=\"monospace\" font-size=\"" << num(1.6 * F.unit) << "\">\n";
        const DominoType order[4] = {DominoType::North, DominoType::South, DominoType::East, DominoType::West};
        const char* names[4] = {"North", "South", "East", "West"};
        for (int i = 0; i < 4; ++i) {
            const double x = F.unit + i * 10 * F.unit, y = board_h + 2 * F.unit;
            os << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(2 * F.unit)
               << "\" height=\"" << num(2 * F.unit) << "\" fill=\"" << domino_color(order[i])
               << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << num(x + 3 * F.unit) << "\" y=\"" << num(y + 1.6 * F.unit) << "\">"
               << names[i] << "</text>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace aztec
