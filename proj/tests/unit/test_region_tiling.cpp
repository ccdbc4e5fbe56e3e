#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "aztec/kasteleyn.hpp"
#include "aztec/region.hpp"
#include "aztec/sampler.hpp"
#include "aztec/tiling.hpp"

using namespace aztec;

namespace {
DiamondParams P(int n, int rho, mpq_class a = 1) { return DiamondParams::make(n, rho, a); }
}  // namespace

TEST(Region, CountsFromInequalities) {
    for (auto [n, rho] : {std::pair{2, 2}, {4, 2}, {8, 4}, {5, 3}}) {
        const auto p = P(n, rho);
        DualGraph g(p);
        const int m = p.m();
        int nb = 0, nw = 0;
        for (int x1 = -5; x1 <= 4 * m + 2 * n + 5; ++x1)
            for (int x2 = -5; x2 <= 2 * n + 5; ++x2) {
                const bool odd1 = ((x1 % 2) + 2) % 2 == 1, odd2 = ((x2 % 2) + 2) % 2 == 1;
                if (odd1 && !odd2 &&
                    ((1 <= x1 && x1 <= 2 * (2 * m + n) + 1 && 0 <= x2 && x2 <= 2 * (n - 1)) ||
                     (1 <= x1 && x1 <= 2 * n - 1 && x2 == 2 * n)))
                    ++nw;
                if (!odd1 && odd2 &&
                    ((0 <= x1 && x1 <= 2 * (2 * m + n) && 1 <= x2 && x2 <= 2 * n - 1) ||
                     (2 * (2 * m + 1) <= x1 && x1 <= 2 * (2 * m + n) && x2 == -1)))
                    ++nb;
            }
        EXPECT_EQ((int)g.blacks().size(), nb);
        EXPECT_EQ((int)g.whites().size(), nw);
        EXPECT_EQ(nb, nw);
    }
}

TEST(Region, RejectsOppositeParity) {
    EXPECT_THROW(DiamondParams::make(4, 1, 1), std::invalid_argument);
    EXPECT_THROW(DiamondParams::make(3, 4, 1), std::invalid_argument);
    EXPECT_THROW(DiamondParams::make(4, 2, 0), std::invalid_argument);
}

TEST(Region, DegreesAndBoundaryClasses) {
    for (auto [n, rho] : {std::pair{2, 2}, {4, 2}, {6, 2}, {7, 3}}) {
        DualGraph g(P(n, rho));
        for (int b = 0; b < (int)g.blacks().size(); ++b) {
            const int d = (int)g.black_neighbors(b).size();
            EXPECT_GE(d, 2);
            EXPECT_LE(d, 4);
            EXPECT_EQ(d < 4, g.classify(b) != BoundaryClass::Interior) << g.blacks()[b].xi << "," << g.blacks()[b].eta;
        }
        for (const auto& e : g.edges()) {
            const KCoord d = g.whites()[e.white] - g.blacks()[e.black];
            EXPECT_TRUE((d == kE1 || d == kE2 || d == KCoord{-1, -1} || d == KCoord{1, -1}));
        }
    }
}

TEST(Region, CoordinateMaps) {
    auto p1 = P(4, 2);  // m = 1
    EXPECT_EQ(to_diamond({2, 1}, p1), (DCoord{2, 1}));
    auto p2 = P(6, 2);  // m = 2
    EXPECT_EQ(to_kasteleyn({1, 2}, p2), (KCoord{1, 0}));
    EXPECT_THROW(to_diamond({1, 1}, p1), std::invalid_argument);
    DualGraph g(p2);
    for (const auto& b : g.blacks()) EXPECT_EQ(to_kasteleyn(to_diamond(b, p2), p2), b);
}

TEST(Region, OverlapHasRhoLines) {
    for (auto [n, rho] : {std::pair{4, 2}, {8, 4}, {7, 3}}) {
        DualGraph g(P(n, rho));
        // lines xi = 2s where the line reaches both the bottom row (eta = -1, diamond B) and the top row
        std::set<int> both;
        for (const auto& b : g.blacks())
            if (b.eta == -1 && g.is_white({b.xi - 1, 2 * n})) both.insert(b.xi / 2);
        std::set<int> bottom, top;
        for (const auto& b : g.blacks()) {
            if (b.eta == -1) bottom.insert(b.xi / 2);
        }
        for (const auto& w : g.whites())
            if (w.eta == 2 * n) top.insert((w.xi + 1) / 2);
        int overlap = 0;
        for (int s : bottom)
            if (top.count(s)) ++overlap;
        EXPECT_EQ(overlap, rho);
        for (int s : bottom)
            if (top.count(s)) {
                EXPECT_GT(s, n - rho);
                EXPECT_LE(s, n);
            }
    }
}

TEST(Tiling, EnumerationMatchesDeterminant) {
    for (auto [n, rho] : {std::pair{2, 2}, {4, 2}})
        for (mpq_class a : {mpq_class(1), mpq_class(1, 2)}) {
            const auto p = P(n, rho, a);
            DualGraph g(p);
            mpq_class total = 0;
            long long count = enumerate_tilings(g, [&](const Tiling& t) { total += weight(g, t); });
            EXPECT_GT(count, 0);
            EXPECT_EQ(partition_function_exact(build_Ka_exact(g)), total);
        }
}

TEST(Tiling, CapRefusesLargeRegions) {
    DualGraph g(P(8, 4));
    EXPECT_THROW(enumerate_tilings(g, [](const Tiling&) {}), TilingCapError);
}

TEST(Tiling, WeightDefinition) {
    const auto p = P(2, 2, mpq_class(1, 2));
    DualGraph g(p);
    for (const auto& t : all_tilings(g)) {
        const int v = vertical_count(g, t);
        mpq_class expect = 1;
        for (int i = 0; i < v; ++i) expect /= 2;
        EXPECT_EQ(weight(g, t), expect);
        EXPECT_EQ(v % 2, 0);
    }
}

TEST(Tiling, HeightBoundaryAndParticlesOnAllTilings) {
    const auto p = P(4, 2);
    DualGraph g(p);
    const int n = p.n;
    std::map<KCoord, int> boundary;
    bool first = true;
    long long count = 0;
    HeightLattice hl(g);
    enumerate_tilings(g, [&](const Tiling& t) {
        ++count;
        const auto hv = hl.compute(t);
        std::map<KCoord, int> h;
        for (size_t i = 0; i < hv.size(); ++i) h[hl.corners()[i]] = hv[i];
        int lo = 1 << 20, hi = -(1 << 20);
        for (const auto& [c, v] : h) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        ASSERT_EQ(lo, 0);
        ASSERT_EQ(hi, 2 * n);
        // boundary corners: those touching fewer than four region squares
        std::map<KCoord, int> bnd;
        for (const auto& [c, v] : h) {
            int k = 0;
            for (KCoord d : {KCoord{1, 0}, KCoord{-1, 0}, KCoord{0, 1}, KCoord{0, -1}})
                k += g.is_black(c + d) || g.is_white(c + d);
            if (k < 4) bnd[c] = v;
        }
        if (first) {
            boundary = bnd;
            first = false;
        } else {
            ASSERT_EQ(boundary, bnd);
        }
        const auto L = extract_L_particles(hl, g, t);
        const auto rep = check_interlacing(L, p);
        ASSERT_TRUE(rep.ok) << rep.violation;
        extract_K_particles(hl, g, t);
    });
    EXPECT_GT(count, 1000);
    // line endpoints follow the dots table: h_left on the top boundary row, h_right on the bottom
}

TEST(Tiling, FlipChangesOneCornerByOne) {
    const auto p = P(4, 2);
    DualGraph g(p);
    auto tilings = all_tilings(g);
    int checked = 0;
    for (size_t i = 0; i < tilings.size() && checked < 200; i += 37) {
        Tiling t = tilings[i];
        for (const auto& blk : flip_candidates(g, t)) {
            Tiling u = t;
            flip(g, u, blk);
            const auto h1 = height_function(g, t), h2 = height_function(g, u);
            int diff = 0;
            for (const auto& [c, v] : h1)
                if (h2.at(c) != v) {
                    ++diff;
                    EXPECT_EQ(c, blk.corner);
                    EXPECT_EQ(std::abs(h2.at(c) - v), 1);
                }
            EXPECT_EQ(diff, 1);
            EXPECT_EQ(std::abs(vertical_count(g, u) - vertical_count(g, t)), 2);
            flip(g, u, blk);
            EXPECT_EQ(u, t);
            ++checked;
        }
    }
    EXPECT_GT(checked, 0);
}

TEST(Tiling, MovedParticleFailsInterlacing) {
    const auto p = P(4, 2);
    DualGraph g(p);
    Tiling t = initial_tiling(g);
    auto L = extract_L_particles(g, t);
    ASSERT_TRUE(check_interlacing(L, p).ok);
    // push the right-most dot of line 1 beyond the right-most dot of line 0
    int best = -1;
    for (int i = 0; i < (int)L.size(); ++i)
        if (L[i].line == 1 && (best < 0 || L[i].pos > L[best].pos)) best = i;
    ASSERT_GE(best, 0);
    L[best].pos = 2 * p.n + 1;
    auto rep = check_interlacing(L, p);
    EXPECT_FALSE(rep.ok);
    ASSERT_TRUE(rep.culprit.has_value());
    EXPECT_EQ(rep.culprit->line, 1);
}

TEST(Tiling, CsvRoundTrip) {
    DualGraph g(P(4, 2));
    Tiling t = initial_tiling(g);
    std::stringstream ss;
    write_tiling_csv(ss, g, t);
    EXPECT_EQ(read_tiling_csv(ss, g), t);
}
