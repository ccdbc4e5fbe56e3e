#include "aztec/tiling.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace aztec {

std::string to_string(DominoType t) {
    switch (t) {
        case DominoType::North: return "N";
        case DominoType::South: return "S";
        case DominoType::East: return "E";
        case DominoType::West: return "W";
    }
    return "?";
}

std::string to_string(Color c) { return c == Color::Blue ? "blue" : "red"; }

DominoType domino_type(KCoord b, KCoord w) {
    const KCoord d = w - b;
    if (d == kE1) return DominoType::South;
    if (d == KCoord{1, -1}) return DominoType::East;
    if (d == kE2) return DominoType::West;
    if (d == KCoord{-1, -1}) return DominoType::North;
    throw std::invalid_argument("squares are not adjacent");
}

void validate_tiling(const DualGraph& g, const Tiling& t) {
    if (t.match.size() != g.blacks().size()) throw std::invalid_argument("tiling has wrong size");
    std::vector<char> used(g.whites().size(), 0);
    for (size_t b = 0; b < t.match.size(); ++b) {
        const int w = t.match[b];
        if (w < 0 || w >= (int)used.size() || used[w]) throw std::invalid_argument("tiling is not a bijection");
        used[w] = 1;
        const auto& nb = g.black_neighbors(b);
        if (std::find(nb.begin(), nb.end(), w) == nb.end()) throw std::invalid_argument("tiling uses a non-edge");
    }
}

long long enumerate_tilings(const DualGraph& g, const std::function<void(const Tiling&)>& visit, int cap) {
    const int nw = (int)g.whites().size();
    if (nw > cap) throw TilingCapError("region too large for exhaustive enumeration");
    Tiling t;
    t.match.assign(g.blacks().size(), -1);
    std::vector<int> wmatch(nw, -1);
    long long count = 0;
    // cover the lowest unmatched white each step
    std::function<void(int)> rec = [&](int from) {
        int w = from;
        while (w < nw && wmatch[w] >= 0) ++w;
        if (w == nw) {
            ++count;
            visit(t);
            return;
        }
        for (int b : g.white_neighbors(w)) {
            if (t.match[b] >= 0) continue;
            t.match[b] = w;
            wmatch[w] = b;
            rec(w + 1);
            t.match[b] = -1;
            wmatch[w] = -1;
        }
    };
    rec(0);
    return count;
}

std::vector<Tiling> all_tilings(const DualGraph& g, int cap) {
    std::vector<Tiling> out;
    enumerate_tilings(g, [&](const Tiling& t) { out.push_back(t); }, cap);
    return out;
}

int vertical_count(const DualGraph& g, const Tiling& t) {
    int v = 0;
    for (size_t b = 0; b < t.match.size(); ++b)
        if (is_vertical(domino_type(g.blacks()[b], g.whites()[t.match[b]]))) ++v;
    return v;
}

mpq_class weight(const DualGraph& g, const Tiling& t) {
    mpq_class w = 1;
    const int v = vertical_count(g, t);
    for (int i = 0; i < v; ++i) w *= g.params().a;
    return w;
}

namespace {

bool is_black_square(KCoord s) { return ((s.xi % 2) + 2) % 2 == 0; }

}  // namespace

HeightLattice::HeightLattice(const DualGraph& g) : g_(g) {
    const int n = g.params().n;
    for (const auto* set : {&g.blacks(), &g.whites()})
        for (const auto& s : *set)
            for (KCoord d : {KCoord{1, 0}, KCoord{-1, 0}, KCoord{0, 1}, KCoord{0, -1}}) index_[s + d] = 0;
    for (auto& [c, i] : index_) {
        i = (int)corners_.size();
        corners_.push_back(c);
    }
    auto in_region = [&](KCoord s) { return g.is_black(s) || g.is_white(s); };
    const KCoord ref{0, 2 * n};
    if (!index_.count(ref)) throw std::logic_error("reference corner missing");
    ref_ = index_.at(ref);
    offset_.resize(corners_.size());
    for (size_t i = 0; i < corners_.size(); ++i) {
        const KCoord c = corners_[i];
        offset_[i] = c.xi - c.eta + 2 * n - (((c.xi % 2) + 2) % 2);
    }
    // breadth-first order: tree steps assign, the rest are consistency checks
    std::vector<char> seen(corners_.size(), 0);
    std::deque<int> q{ref_};
    seen[ref_] = 1;
    while (!q.empty()) {
        const int ci = q.front();
        q.pop_front();
        const KCoord c = corners_[ci];
        for (KCoord d : {KCoord{1, 1}, KCoord{-1, -1}, KCoord{1, -1}, KCoord{-1, 1}}) {
            auto it = index_.find(c + d);
            if (it == index_.end()) continue;
            const KCoord s1{c.xi + d.xi, c.eta}, s2{c.xi, c.eta + d.eta};
            if (!in_region(s1) && !in_region(s2)) continue;
            const bool black_is_s1 = is_black_square(s1);
            const KCoord bs = black_is_s1 ? s1 : s2, ws = black_is_s1 ? s2 : s1;
            Step st;
            st.from = ci;
            st.to = it->second;
            st.black = g.black_index(bs);
            st.white = g.white_index(ws);
            st.sign = (black_is_s1 == (d.xi * d.eta < 0)) ? 1 : -1;
            st.tree = !seen[st.to];
            if (st.tree) {
                seen[st.to] = 1;
                q.push_back(st.to);
            }
            steps_.push_back(st);
        }
    }
    for (char s : seen)
        if (!s) throw std::logic_error("height lattice is not connected");
}

int HeightLattice::corner_index(KCoord c) const {
    auto it = index_.find(c);
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> HeightLattice::compute(const Tiling& t) const {
    std::vector<int> H(corners_.size(), 0);
    for (const auto& st : steps_) {
        const bool covered = st.black >= 0 && st.white >= 0 && t.match[st.black] == st.white;
        const int v = H[st.from] + st.sign * (covered ? -3 : 1);
        if (st.tree)
            H[st.to] = v;
        else if (H[st.to] != v)
            throw std::logic_error("inconsistent height increments");
    }
    const int h0 = H[ref_];
    for (size_t i = 0; i < H.size(); ++i) {
        const int num = H[i] - h0 + offset_[i];
        if (num % 4 != 0) throw std::logic_error("height normalization is not integral");
        H[i] = num / 4;
    }
    return H;
}

HeightFunction height_function(const DualGraph& g, const Tiling& t) {
    HeightLattice hl(g);
    const auto h = hl.compute(t);
    HeightFunction out;
    for (size_t i = 0; i < h.size(); ++i) out[hl.corners()[i]] = h[i];
    return out;
}

ParticleSet extract_L_particles(const HeightLattice& hl, const DualGraph& g, const Tiling& t) {
    const int n = g.params().n;
    const auto h = hl.compute(t);
    ParticleSet out;
    for (size_t b = 0; b < g.blacks().size(); ++b) {
        const KCoord s = g.blacks()[b];
        const DominoType ty = domino_type(s, g.whites()[t.match[b]]);
        const bool by_domino = ty == DominoType::South || ty == DominoType::East;
        const int lo = h[hl.corner_index({s.xi, s.eta - 1})], hi = h[hl.corner_index({s.xi, s.eta + 1})];
        const bool by_height = lo - hi == 1;
        if (by_domino != by_height) throw ExtractionMismatch("L-particle extraction methods disagree");
        if (by_domino) out.push_back({s.xi / 2, s.eta, lo <= n ? Color::Blue : Color::Red, s});
    }
    std::sort(out.begin(), out.end());
    return out;
}

ParticleSet extract_K_particles(const HeightLattice& hl, const DualGraph& g, const Tiling& t) {
    const int n = g.params().n;
    const auto h = hl.compute(t);
    ParticleSet out;
    for (size_t b = 0; b < g.blacks().size(); ++b) {
        const KCoord s = g.blacks()[b];
        const DominoType ty = domino_type(s, g.whites()[t.match[b]]);
        const bool by_domino = ty == DominoType::South || ty == DominoType::West;
        const int left = h[hl.corner_index({s.xi - 1, s.eta})], right = h[hl.corner_index({s.xi + 1, s.eta})];
        const bool by_height = right - left == 1;
        if (by_domino != by_height) throw ExtractionMismatch("K-particle extraction methods disagree");
        if (by_domino) {
            const DCoord d = to_diamond(s, g.params());
            out.push_back({d.z / 2, d.x, right <= n ? Color::Blue : Color::Red, s});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ParticleSet extract_L_particles(const DualGraph& g, const Tiling& t) {
    return extract_L_particles(HeightLattice(g), g, t);
}

ParticleSet extract_K_particles(const DualGraph& g, const Tiling& t) {
    return extract_K_particles(HeightLattice(g), g, t);
}

std::pair<int, int> expected_line_counts(const DiamondParams& p, int s) {
    const int n = p.n, rho = p.rho;
    if (s < 0 || s > 2 * n - rho) return {0, 0};
    if (s <= n - rho) return {n - s, 0};
    if (s < n) return {n - s, rho + s - n};
    return {0, rho + s - n};
}

namespace {

InterlacingReport fail(std::string msg, std::optional<Particle> p = std::nullopt) {
    InterlacingReport r;
    r.ok = false;
    r.violation = std::move(msg);
    r.culprit = p;
    return r;
}

std::string where(const Particle& p) {
    std::ostringstream os;
    os << " (line " << p.line << ", eta " << p.pos << ")";
    return os.str();
}

}  // namespace

InterlacingReport check_interlacing(const ParticleSet& ps, const DiamondParams& params) {
    const int n = params.n, rho = params.rho;
    const int last = 2 * n - rho;
    std::vector<std::vector<Particle>> blue(last + 1), red(last + 1), all(last + 1);
    for (const auto& p : ps) {
        if (p.line < 0 || p.line > last) return fail("particle on a line outside the region", p);
        (p.color == Color::Blue ? blue : red)[p.line].push_back(p);
        all[p.line].push_back(p);
    }
    auto by_pos = [](const Particle& a, const Particle& b) { return a.pos < b.pos; };
    for (int s = 0; s <= last; ++s) {
        std::sort(blue[s].begin(), blue[s].end(), by_pos);
        std::sort(red[s].begin(), red[s].end(), by_pos);
        std::sort(all[s].begin(), all[s].end(), by_pos);
        auto [nb, nr] = expected_line_counts(params, s);
        if ((int)blue[s].size() != nb || (int)red[s].size() != nr) {
            std::ostringstream os;
            os << "line " << s << " has " << blue[s].size() << " blue and " << red[s].size() << " red dots, expected "
               << nb << " and " << nr;
            return fail(os.str(), all[s].empty() ? std::nullopt : std::optional<Particle>(all[s].front()));
        }
        if (!blue[s].empty() && !red[s].empty() && red[s].back().pos > blue[s].front().pos)
            return fail("red dot to the right of a blue dot" + where(red[s].back()), red[s].back());
    }
    // blue: counted from the right, the l-th dot of line s+1 sits in [p_{l+1}, p_l] of line s
    for (int s = 0; s + 1 <= last; ++s) {
        const auto& P = blue[s];
        const auto& Q = blue[s + 1];
        if (Q.empty()) continue;
        const int np = (int)P.size();
        for (int l = 0; l < (int)Q.size(); ++l) {
            const Particle& q = Q[Q.size() - 1 - l];
            if (q.pos > P[np - 1 - l].pos) return fail("blue dots do not interlace" + where(q), q);
            if (l + 1 < np && q.pos < P[np - 2 - l].pos) return fail("blue dots do not interlace" + where(q), q);
        }
    }
    // red: mirror image, counted from the left on the longer line s+1
    for (int s = 0; s + 1 <= last; ++s) {
        const auto& P = red[s + 1];
        const auto& Q = red[s];
        if (Q.empty()) continue;
        for (int l = 0; l < (int)Q.size(); ++l) {
            const Particle& q = Q[l];
            if (q.pos < P[l].pos) return fail("red dots do not interlace" + where(q), q);
            if (l + 1 < (int)P.size() && q.pos > P[l + 1].pos) return fail("red dots do not interlace" + where(q), q);
        }
    }
    // overlap: extreme dots of consecutive lines
    for (int s = n - rho; s < n; ++s) {
        const auto& A = all[s];
        const auto& B = all[s + 1];
        if (A.empty() || B.empty()) continue;
        if (A.back().pos < B.back().pos) return fail("right-most dot ordering fails" + where(B.back()), B.back());
        if (B.front().pos > A.front().pos) return fail("left-most dot ordering fails" + where(B.front()), B.front());
    }
    return {};
}

void write_tiling_csv(std::ostream& os, const DualGraph& g, const Tiling& t) {
    os << "black_xi,black_eta,white_xi,white_eta,type\n";
    for (size_t b = 0; b < t.match.size(); ++b) {
        const KCoord B = g.blacks()[b], W = g.whites()[t.match[b]];
        os << B.xi << ',' << B.eta << ',' << W.xi << ',' << W.eta << ',' << to_string(domino_type(B, W)) << '\n';
    }
}

Tiling read_tiling_csv(std::istream& is, const DualGraph& g) {
    Tiling t;
    t.match.assign(g.blacks().size(), -1);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int v[4];
        char c;
        ls >> v[0] >> c >> v[1] >> c >> v[2] >> c >> v[3];
        if (!ls) throw std::invalid_argument("malformed tiling row: " + line);
        const int b = g.black_index({v[0], v[1]}), w = g.white_index({v[2], v[3]});
        if (b < 0 || w < 0) throw std::invalid_argument("tiling row outside the region: " + line);
        t.match[b] = w;
    }
    validate_tiling(g, t);
    return t;
}

void write_particles_csv(std::ostream& os, const ParticleSet& p) {
    os << "s,eta,color\n";
    for (const auto& q : p) os << q.line << ',' << q.pos << ',' << to_string(q.color) << '\n';
}

}  // namespace aztec
