#include <gtest/gtest.h>

#include <regex>

#include "aztec/render.hpp"
#include "aztec/sampler.hpp"

using namespace aztec;

namespace {
int count(const std::string& s, const std::string& needle) {
    int c = 0;
    for (size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
    return c;
}
}  // namespace

TEST(Render, DeterministicBytes) {
    DualGraph g(DiamondParams::make(8, 4, 1));
    ChainConfig cfg;
    cfg.seed = 3;
    const Tiling t = sample_all(g, cfg).front();
    RenderStyle st;
    st.level_lines = st.L_particles = st.K_particles = st.line_counts = true;
    EXPECT_EQ(render_tiling_svg(g, t, st), render_tiling_svg(g, t, st));
}

TEST(Render, OneRectPerDominoWithColors) {
    DualGraph g(DiamondParams::make(4, 2, 1));
    const Tiling t = initial_tiling(g);
    RenderStyle st;
    st.legend = false;
    const std::string svg = render_tiling_svg(g, t, st);
    int per[4] = {0, 0, 0, 0};
    for (size_t b = 0; b < g.blacks().size(); ++b)
        per[int(domino_type(g.blacks()[b], g.whites()[t.match[b]]))]++;
    EXPECT_EQ(count(svg, "fill=\"yellow\""), per[int(DominoType::North)]);
    EXPECT_EQ(count(svg, "fill=\"green\""), per[int(DominoType::South)]);
    EXPECT_EQ(count(svg, "fill=\"blue\""), per[int(DominoType::East)]);
    EXPECT_EQ(count(svg, "fill=\"red\""), per[int(DominoType::West)]);
}

TEST(Render, MarginCountsMatchTable) {
    const auto p = DiamondParams::make(8, 4, 1);
    DualGraph g(p);
    ChainConfig cfg;
    cfg.seed = 9;
    const Tiling t = sample_all(g, cfg).front();
    RenderStyle st;
    st.line_counts = true;
    const std::string svg = render_tiling_svg(g, t, st);
    std::regex re("s=(-?\\d+) blue=(\\d+) red=(\\d+)");
    int lines = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
        const auto [blue, red] = expected_line_counts(p, std::stoi((*it)[1]));
        EXPECT_EQ(std::stoi((*it)[2]), blue);
        EXPECT_EQ(std::stoi((*it)[3]), red);
        ++lines;
    }
    EXPECT_GT(lines, 0);
}
