#pragma once

#include <string>

#include "aztec/region.hpp"
#include "aztec/tiling.hpp"

namespace aztec {

struct RenderStyle {
    double unit = 6.0;  // half the side of a square, in SVG user units
    bool legend = true;
    bool level_lines = false;
    bool L_particles = false;
    bool K_particles = false;
    bool line_counts = false;  // L-particle counts per line in the right margin
};

// Board coordinates: X = xi + eta, Y = eta - xi; a square covers [X-1, X+1] x [Y-1, Y+1].
std::string render_tiling_svg(const DualGraph& g, const Tiling& t, const RenderStyle& style = {});

const char* domino_color(DominoType d);

}  // namespace aztec
