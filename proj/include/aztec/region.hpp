#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace aztec {

struct DiamondParams {
    int n = 2;
    int rho = 2;
    mpq_class a = 1;

    int m() const { return (n - rho) / 2; }
    int M() const { return n - rho + 1; }
    double a_double() const { return a.get_d(); }

    void validate() const;
    static DiamondParams make(int n, int rho, const mpq_class& a);
};

struct KCoord {
    int xi = 0;
    int eta = 0;
    auto operator<=>(const KCoord&) const = default;
};

struct DCoord {
    int z = 0;
    int x = 0;
    auto operator<=>(const DCoord&) const = default;
};

DCoord to_diamond(KCoord c, const DiamondParams& p);
KCoord to_kasteleyn(DCoord c, const DiamondParams& p);

// offsets e1 = (1,1), e2 = (-1,1)
inline constexpr KCoord kE1{1, 1};
inline constexpr KCoord kE2{-1, 1};

inline KCoord operator+(KCoord a, KCoord b) { return {a.xi + b.xi, a.eta + b.eta}; }
inline KCoord operator-(KCoord a, KCoord b) { return {a.xi - b.xi, a.eta - b.eta}; }

enum class BoundaryClass { Interior, Left, Bottom, Top, Special };
std::string to_string(BoundaryClass c);

struct Edge {
    int black;
    int white;
};

class DualGraph {
public:
    explicit DualGraph(const DiamondParams& p);

    const DiamondParams& params() const { return params_; }
    const std::vector<KCoord>& whites() const { return whites_; }
    const std::vector<KCoord>& blacks() const { return blacks_; }
    const std::vector<Edge>& edges() const { return edges_; }

    int white_index(KCoord c) const;  // -1 if absent
    int black_index(KCoord c) const;
    bool is_white(KCoord c) const { return white_index(c) >= 0; }
    bool is_black(KCoord c) const { return black_index(c) >= 0; }

    const std::vector<int>& black_neighbors(int b) const { return adj_black_[b]; }
    const std::vector<int>& white_neighbors(int w) const { return adj_white_[w]; }

    BoundaryClass classify(int b) const;

private:
    DiamondParams params_;
    std::vector<KCoord> whites_, blacks_;
    std::map<KCoord, int> widx_, bidx_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_black_, adj_white_;
};

DualGraph build_region(const DiamondParams& p);

}  // namespace aztec
