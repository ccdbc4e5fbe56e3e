#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "aztec/region.hpp"

namespace aztec {

struct Tiling {
    std::vector<int> match;  // black id -> white id
    bool operator==(const Tiling&) const = default;
};

enum class DominoType { North, South, East, West };
std::string to_string(DominoType t);

// Type from the white partner's offset: b+e1 South, b-e2 East, b+e2 West, b-e1 North.
DominoType domino_type(KCoord b, KCoord w);
inline bool is_vertical(DominoType t) { return t == DominoType::East || t == DominoType::West; }

void validate_tiling(const DualGraph& g, const Tiling& t);

class TilingCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kEnumerationCap = 40;  // whites

// Calls visit once per perfect matching. Returns the number visited.
long long enumerate_tilings(const DualGraph& g, const std::function<void(const Tiling&)>& visit,
                            int cap = kEnumerationCap);
std::vector<Tiling> all_tilings(const DualGraph& g, int cap = kEnumerationCap);

int vertical_count(const DualGraph& g, const Tiling& t);
mpq_class weight(const DualGraph& g, const Tiling& t);

// Heights on lattice corners (xi + eta even), normalized to 0 on the top edge and 2n on the bottom.
using HeightFunction = std::map<KCoord, int>;
HeightFunction height_function(const DualGraph& g, const Tiling& t);

// Corner lattice and traversal order precomputed once per region.
class HeightLattice {
public:
    explicit HeightLattice(const DualGraph& g);
    const std::vector<KCoord>& corners() const { return corners_; }
    int corner_index(KCoord c) const;
    // Heights indexed like corners(); throws on inconsistent increments.
    std::vector<int> compute(const Tiling& t) const;

private:
    struct Step {
        int from, to;
        int black, white;  // squares on either side (-1 if outside)
        int sign;          // +1 if the black square lies to the left
        bool tree;
    };
    const DualGraph& g_;
    std::vector<KCoord> corners_;
    std::map<KCoord, int> index_;
    std::vector<Step> steps_;
    std::vector<int> offset_;
    int ref_ = 0;
};

enum class Color { Blue, Red };
std::string to_string(Color c);

struct Particle {
    int line;  // s for L-particles (xi = 2s), r for K-particles (z = 2r)
    int pos;   // eta for L, x for K
    Color color;
    KCoord square;
    auto operator<=>(const Particle&) const = default;
};
using ParticleSet = std::vector<Particle>;

class ExtractionMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// South or East dominoes; cross-checked against height descents along xi = 2s.
ParticleSet extract_L_particles(const DualGraph& g, const Tiling& t);
// South or West dominoes; cross-checked against height descents along z = 2r.
ParticleSet extract_K_particles(const DualGraph& g, const Tiling& t);
ParticleSet extract_L_particles(const HeightLattice& hl, const DualGraph& g, const Tiling& t);
ParticleSet extract_K_particles(const HeightLattice& hl, const DualGraph& g, const Tiling& t);

struct InterlacingReport {
    bool ok = true;
    std::string violation;
    std::optional<Particle> culprit;
};
InterlacingReport check_interlacing(const ParticleSet& p, const DiamondParams& params);

// Expected (blue, red) counts on the line xi = 2s.
std::pair<int, int> expected_line_counts(const DiamondParams& p, int s);

void write_tiling_csv(std::ostream& os, const DualGraph& g, const Tiling& t);
Tiling read_tiling_csv(std::istream& is, const DualGraph& g);
void write_particles_csv(std::ostream& os, const ParticleSet& p);

}  // namespace aztec
