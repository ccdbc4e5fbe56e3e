#include "aztec/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aztec {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

ChainConfig ChainConfig::resolved(const DiamondParams& p) const {
    ChainConfig c = *this;
    const long long n3 = 1LL * p.n * p.n * p.n;
    if (c.burn_in_flips <= 0) c.burn_in_flips = 100 * n3;
    if (c.thinning_flips <= 0) c.thinning_flips = n3;
    if (c.n_samples <= 0) throw std::invalid_argument("n_samples must be positive");
    return c;
}

Tiling initial_tiling(const DualGraph& g) {
    const int nb = (int)g.blacks().size(), nw = (int)g.whites().size();
    std::vector<int> bm(nb, -1), wm(nw, -1);
    // greedy seed, then augmenting paths
    for (int b = 0; b < nb; ++b)
        for (int w : g.black_neighbors(b))
            if (wm[w] < 0) {
                bm[b] = w;
                wm[w] = b;
                break;
            }
    std::vector<int> seen(nw, -1);
    for (int root = 0; root < nb; ++root) {
        if (bm[root] >= 0) continue;
        // iterative DFS over alternating paths
        std::vector<std::pair<int, int>> parent(nw, {-1, -1});
        std::vector<int> st{root};
        std::vector<size_t> idx{0};
        int found = -1;
        while (!st.empty() && found < 0) {
            const int b = st.back();
            auto& i = idx.back();
            const auto& nbrs = g.black_neighbors(b);
            if (i == nbrs.size()) {
                st.pop_back();
                idx.pop_back();
                continue;
            }
            const int w = nbrs[i++];
            if (seen[w] == root) continue;
            seen[w] = root;
            parent[w] = {b, -1};
            if (wm[w] < 0) {
                found = w;
            } else {
                st.push_back(wm[w]);
                idx.push_back(0);
            }
        }
        if (found < 0) throw std::logic_error("region has no perfect matching");
        int w = found;
        while (w >= 0) {
            const int b = parent[w].first;
            const int prev = bm[b];
            bm[b] = w;
            wm[w] = b;
            w = (b == root) ? -1 : prev;
        }
    }
    Tiling t{bm};
    validate_tiling(g, t);
    return t;
}

std::vector<FlipBlock> all_blocks(const DualGraph& g) {
    std::vector<FlipBlock> out;
    std::map<KCoord, char> corners;
    for (const auto& b : g.blacks())
        for (KCoord d : {KCoord{1, 0}, KCoord{-1, 0}, KCoord{0, 1}, KCoord{0, -1}}) corners[b + d] = 1;
    for (const auto& [c, _] : corners) {
        const KCoord E = c + KCoord{1, 0}, W = c + KCoord{-1, 0}, N = c + KCoord{0, 1}, S = c + KCoord{0, -1};
        FlipBlock blk{c, {-1, -1}, {-1, -1}};
        // E and W share a color, as do N and S
        if (g.is_black(E) && g.is_black(W) && g.is_white(N) && g.is_white(S)) {
            blk.black[0] = g.black_index(E);
            blk.black[1] = g.black_index(W);
            blk.white[0] = g.white_index(N);
            blk.white[1] = g.white_index(S);
        } else if (g.is_white(E) && g.is_white(W) && g.is_black(N) && g.is_black(S)) {
            blk.black[0] = g.black_index(N);
            blk.black[1] = g.black_index(S);
            blk.white[0] = g.white_index(E);
            blk.white[1] = g.white_index(W);
        } else {
            continue;
        }
        out.push_back(blk);
    }
    return out;
}

BlockState block_state(const DualGraph& g, const Tiling& t, const FlipBlock& blk) {
    const int b0 = blk.black[0], b1 = blk.black[1];
    const int m0 = t.match[b0], m1 = t.match[b1];
    const bool straight = m0 == blk.white[0] && m1 == blk.white[1];
    const bool crossed = m0 == blk.white[1] && m1 == blk.white[0];
    if (!straight && !crossed) return BlockState::None;
    const bool v = is_vertical(domino_type(g.blacks()[b0], g.whites()[m0]));
    return v ? BlockState::TwoVertical : BlockState::TwoHorizontal;
}

std::vector<FlipBlock> flip_candidates(const DualGraph& g, const Tiling& t) {
    std::vector<FlipBlock> out;
    for (const auto& blk : all_blocks(g))
        if (block_state(g, t, blk) != BlockState::None) out.push_back(blk);
    return out;
}

void flip(const DualGraph& g, Tiling& t, const FlipBlock& blk) {
    if (block_state(g, t, blk) == BlockState::None) throw std::invalid_argument("block is not flippable");
    std::swap(t.match[blk.black[0]], t.match[blk.black[1]]);
}

FlipChain::FlipChain(const DualGraph& g, const ChainConfig& cfg)
    : g_(g), blocks_(all_blocks(g)), t_(initial_tiling(g)),
      rng_(splitmix64(cfg.seed + static_cast<std::uint64_t>(cfg.chain))) {
    const double a = g.params().a_double();
    up_ = std::min(1.0, a * a);
    down_ = std::min(1.0, 1.0 / (a * a));
}

bool FlipChain::step() {
    if (blocks_.empty()) return false;
    std::uniform_int_distribution<size_t> pick(0, blocks_.size() - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const FlipBlock& blk = blocks_[pick(rng_)];
    const double acc = acceptance(t_, blk);
    if (acc == 0.0) return false;
    if (acc < 1.0 && u(rng_) >= acc) return false;
    std::swap(t_.match[blk.black[0]], t_.match[blk.black[1]]);
    ++accepted_;
    return true;
}

double FlipChain::acceptance(const Tiling& t, const FlipBlock& blk) const {
    switch (block_state(g_, t, blk)) {
        case BlockState::TwoHorizontal: return up_;
        case BlockState::TwoVertical: return down_;
        default: return 0.0;
    }
}

double FlipChain::move_probability(const Tiling& t, const FlipBlock& blk) const {
    return blocks_.empty() ? 0.0 : acceptance(t, blk) / double(blocks_.size());
}

void FlipChain::run(long long flips) {
    for (long long i = 0; i < flips; ++i) step();
}

void sample(const DualGraph& g, const ChainConfig& cfg_in, const std::function<void(const Tiling&)>& visit) {
    const ChainConfig cfg = cfg_in.resolved(g.params());
    FlipChain chain(g, cfg);
    chain.run(cfg.burn_in_flips);
    for (long long i = 0; i < cfg.n_samples; ++i) {
        if (i > 0) chain.run(cfg.thinning_flips);
        visit(chain.state());
    }
}

std::vector<Tiling> sample_all(const DualGraph& g, const ChainConfig& cfg) {
    std::vector<Tiling> out;
    sample(g, cfg, [&](const Tiling& t) { out.push_back(t); });
    return out;
}

Estimate empirical_edge_probability(const std::vector<Tiling>& samples, int black, int white) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    const size_t N = samples.size();
    long long hits = 0;
    for (const auto& t : samples) hits += t.match[black] == white;
    const double p = double(hits) / double(N);
    double se = std::sqrt(p * (1 - p) / double(N));
    // batch means, for correlated chains
    const size_t nb = 50;
    if (N >= 20 * nb) {
        const size_t len = N / nb;
        double ss = 0;
        for (size_t k = 0; k < nb; ++k) {
            long long h = 0;
            for (size_t i = k * len; i < (k + 1) * len; ++i) h += samples[i].match[black] == white;
            const double d = double(h) / double(len) - p;
            ss += d * d;
        }
        se = std::max(se, std::sqrt(ss / double(nb - 1) / double(nb)));
    }
    return {p, se};
}

}  // namespace aztec
