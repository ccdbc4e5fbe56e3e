#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "aztec/region.hpp"
#include "aztec/tiling.hpp"

namespace aztec {

inline constexpr const char* kRngName = "mt19937_64 seeded by splitmix64(seed + chain)";

struct ChainConfig {
    std::uint64_t seed = 1;
    long long burn_in_flips = 0;   // proposals; 0 means 100 n^3
    long long thinning_flips = 0;  // proposals; 0 means n^3
    long long n_samples = 1;
    int chain = 0;

    ChainConfig resolved(const DiamondParams& p) const;
};

std::uint64_t splitmix64(std::uint64_t x);

Tiling initial_tiling(const DualGraph& g);

// 2x2 block around an interior corner: squares E=c+(1,0), W=c-(1,0), N=c+(0,1), S=c-(0,1).
struct FlipBlock {
    KCoord corner;
    int black[2];  // black ids
    int white[2];  // white ids
};
std::vector<FlipBlock> all_blocks(const DualGraph& g);

enum class BlockState { None, TwoVertical, TwoHorizontal };
BlockState block_state(const DualGraph& g, const Tiling& t, const FlipBlock& blk);
std::vector<FlipBlock> flip_candidates(const DualGraph& g, const Tiling& t);
// Swaps the parallel pair; the block must be flippable.
void flip(const DualGraph& g, Tiling& t, const FlipBlock& blk);

class FlipChain {
public:
    FlipChain(const DualGraph& g, const ChainConfig& cfg);

    // One Metropolis step: uniform block among all blocks, accept by the weight ratio.
    bool step();
    void run(long long flips);
    const Tiling& state() const { return t_; }
    const std::vector<FlipBlock>& blocks() const { return blocks_; }
    double acceptance(const Tiling& t, const FlipBlock& blk) const;
    // probability that one step moves t by flipping blk
    double move_probability(const Tiling& t, const FlipBlock& blk) const;
    long long accepted() const { return accepted_; }

private:
    const DualGraph& g_;
    std::vector<FlipBlock> blocks_;
    Tiling t_;
    std::mt19937_64 rng_;
    double up_, down_;  // acceptance for H->V and V->H
    long long accepted_ = 0;
};

// Streams n_samples tilings after burn-in, thinning between them.
void sample(const DualGraph& g, const ChainConfig& cfg, const std::function<void(const Tiling&)>& visit);
std::vector<Tiling> sample_all(const DualGraph& g, const ChainConfig& cfg);

struct Estimate {
    double p;
    double stderr_;
};
// stderr_ is the larger of the binomial and the 50-batch-means estimate
Estimate empirical_edge_probability(const std::vector<Tiling>& samples, int black, int white);

}  // namespace aztec
