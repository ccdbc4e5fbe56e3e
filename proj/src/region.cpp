#include "aztec/region.hpp"

#include <algorithm>
#include <sstream>

namespace aztec {

void DiamondParams::validate() const {
    if (n < 1 || rho < 1) throw std::invalid_argument("n and rho must be positive");
    if (rho > n) throw std::invalid_argument("rho must not exceed n");
    if ((n - rho) % 2 != 0) throw std::invalid_argument("n and rho must have the same parity");
    if (a <= 0) throw std::invalid_argument("weight a must be positive");
}

DiamondParams DiamondParams::make(int n, int rho, const mpq_class& a) {
    DiamondParams p;
    p.n = n;
    p.rho = rho;
    p.a = a;
    p.a.canonicalize();
    p.validate();
    return p;
}

DCoord to_diamond(KCoord c, const DiamondParams& p) {
    int num = c.eta - c.xi + 2 * p.m() + 1;
    if (num % 2 != 0) throw std::invalid_argument("coordinate has the wrong parity for the diamond map");
    return {c.eta + 1, num / 2};
}

KCoord to_kasteleyn(DCoord c, const DiamondParams& p) {
    return {c.z - 2 * c.x + 2 * p.m(), c.z - 1};
}

std::string to_string(BoundaryClass c) {
    switch (c) {
        case BoundaryClass::Interior: return "interior";
        case BoundaryClass::Left: return "left";
        case BoundaryClass::Bottom: return "bottom";
        case BoundaryClass::Top: return "top";
        case BoundaryClass::Special: return "special";
    }
    return "?";
}

DualGraph::DualGraph(const DiamondParams& p) : params_(p) {
    p.validate();
    const int n = p.n, m = p.m();
    for (int x1 = 1; x1 <= 2 * (2 * m + n) + 1; x1 += 2)
        for (int x2 = 0; x2 <= 2 * (n - 1); x2 += 2) whites_.push_back({x1, x2});
    for (int x1 = 1; x1 <= 2 * n - 1; x1 += 2) whites_.push_back({x1, 2 * n});

    for (int x1 = 0; x1 <= 2 * (2 * m + n); x1 += 2)
        for (int x2 = 1; x2 <= 2 * n - 1; x2 += 2) blacks_.push_back({x1, x2});
    for (int x1 = 2 * (2 * m + 1); x1 <= 2 * (2 * m + n); x1 += 2) blacks_.push_back({x1, -1});

    std::sort(whites_.begin(), whites_.end());
    std::sort(blacks_.begin(), blacks_.end());
    for (int i = 0; i < (int)whites_.size(); ++i) widx_[whites_[i]] = i;
    for (int i = 0; i < (int)blacks_.size(); ++i) bidx_[blacks_[i]] = i;

    adj_black_.resize(blacks_.size());
    adj_white_.resize(whites_.size());
    const KCoord offs[4] = {kE1, KCoord{-1, -1}, kE2, KCoord{1, -1}};
    for (int b = 0; b < (int)blacks_.size(); ++b) {
        for (const auto& o : offs) {
            int w = white_index(blacks_[b] + o);
            if (w < 0) continue;
            edges_.push_back({b, w});
            adj_black_[b].push_back(w);
            adj_white_[w].push_back(b);
        }
    }
}

int DualGraph::white_index(KCoord c) const {
    auto it = widx_.find(c);
    return it == widx_.end() ? -1 : it->second;
}

int DualGraph::black_index(KCoord c) const {
    auto it = bidx_.find(c);
    return it == bidx_.end() ? -1 : it->second;
}

BoundaryClass DualGraph::classify(int b) const {
    const KCoord c = blacks_.at(b);
    const int n = params_.n, m = params_.m();
    if (c.xi == 2 * n && c.eta == 2 * n - 1) return BoundaryClass::Special;
    if (c.xi == 0) return BoundaryClass::Left;
    if (c.eta == -1) return BoundaryClass::Bottom;
    if (c.eta == 2 * n - 1 && c.xi >= 2 * n + 2 && c.xi <= 4 * m + 2 * n) return BoundaryClass::Top;
    return BoundaryClass::Interior;
}

DualGraph build_region(const DiamondParams& p) { return DualGraph(p); }

}  // namespace aztec
