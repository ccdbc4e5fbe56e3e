#include "aztec/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <sstream>

#include "aztec/asymptotics.hpp"
#include "aztec/kasteleyn.hpp"
#include "aztec/kernels_finite.hpp"
#include "aztec/kernels_limit.hpp"
#include "aztec/sampler.hpp"
#include "aztec/tiling.hpp"

namespace aztec {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Check {
    bool ok = true;
    std::ostringstream msg;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) msg << "FAILED " << what << "; ";
            ok = false;
        }
    }
};

ExactKernels exact_kernels(const DiamondParams& p) { return ExactKernels(p, ExactEvaluator(p.a)); }

// enumeration oracle with double probabilities
struct Ensemble {
    std::vector<Tiling> tilings;
    std::vector<double> prob;
    explicit Ensemble(const DualGraph& g) : tilings(all_tilings(g)) {
        const double a = g.params().a_double();
        double Z = 0;
        for (const auto& t : tilings) Z += prob.emplace_back(std::pow(a, vertical_count(g, t)));
        for (double& p : prob) p /= Z;
    }
    template <class Ev>
    double probability(Ev&& ev) const {
        double s = 0;
        for (size_t i = 0; i < tilings.size(); ++i)
            if (ev(tilings[i])) s += prob[i];
        return s;
    }
};

bool L_dot(const DualGraph& g, const Tiling& t, int b) {
    const auto d = domino_type(g.blacks()[b], g.whites()[t.match[b]]);
    return d == DominoType::South || d == DominoType::East;
}

double max_abs_diff(const Dense<cplx>& A, const Dense<cplx>& B) {
    double m = 0;
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[i].size(); ++j) m = std::max(m, std::abs(A[i][j] - B[i][j]));
    return m;
}

Dense<cplx> to_complex(const Dense<GaussRat>& A) {
    Dense<cplx> out(A.size(), std::vector<cplx>(A.empty() ? 0 : A[0].size()));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[i].size(); ++j) out[i][j] = A[i][j].to_complex();
    return out;
}

void c1_partition(Check& c) {
    for (auto [n, rho] : {std::pair{2, 2}, {4, 2}})
        for (mpq_class a : {mpq_class(1), mpq_class(1, 2)}) {
            const auto p = DiamondParams::make(n, rho, a);
            DualGraph g(p);
            mpq_class Z = 0;
            const long long N = enumerate_tilings(g, [&](const Tiling& t) { Z += weight(g, t); });
            const mpq_class det = partition_function_exact(build_Ka_exact(g));
            c.require(det == Z, "det (" + std::to_string(n) + "," + std::to_string(rho) + ")");
            c.msg << "n=" << n << " a=" << a << ": " << N << " tilings, Z=" << Z << (det == Z ? " ==" : " !=")
                  << " |det|; ";
        }
}

void c2_inverse(Check& c) {
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2)}) {
        const auto p = DiamondParams::make(4, 2, a);
        DualGraph g(p);
        FiniteKernels fk(p, Method::Quadrature, 1e-13);
        const auto Ka = build_Ka(g);
        const auto Kf = inverse_formula(g, fk);
        const double d = max_abs_diff(Kf, inverse_solve(Ka));
        const auto rep = verify_identity_cases(g, Ka, Kf, 1e-9);
        double worst = 0;
        for (const auto& [cls, r] : rep.max_residual) worst = std::max(worst, r);
        c.require(d < 1e-9, "formula vs solve");
        c.require(worst < 1e-9 && rep.passed, "K.C = I");
        c.msg << "a=" << a << ": |formula-solve|=" << fmt(d) << " |KC-I|=" << fmt(worst) << "; ";
    }
    const auto p = DiamondParams::make(2, 2, 1);
    DualGraph g(p);
    const auto Ka = build_Ka_exact(g);
    const auto C = inverse_formula_exact(g, exact_kernels(p));
    bool exact = true;
    for (size_t b = 0; b < Ka.size(); ++b)
        for (size_t y = 0; y < Ka.size(); ++y) {
            GaussRat s;
            for (size_t w = 0; w < C.size(); ++w) s += Ka[b][w] * C[w][y];
            exact &= s == GaussRat(b == y ? 1 : 0);
        }
    c.require(exact, "exact inverse n=2");
    c.msg << "n=2 exact: " << (exact ? "K.C == I" : "mismatch");
}

void c3_kenyon(Check& c) {
    const auto p = DiamondParams::make(4, 2, 1);
    DualGraph g(p);
    Ensemble ens(g);
    const auto KaE = build_Ka_exact(g);
    const auto Ka = to_complex(KaE);
    const auto KinvE = inverse_formula_exact(g, exact_kernels(p));
    const auto Kinv = to_complex(KinvE);
    const auto& E = g.edges();
    double worst = 0;
    int pairs = 0;
    for (size_t i = 0; i < E.size(); ++i) {
        const double want = ens.probability([&](const Tiling& t) { return t.match[E[i].black] == E[i].white; });
        worst = std::max(worst, std::abs(dimer_correlation({{E[i].black, E[i].white}}, Ka, Kinv) - want));
        for (size_t j = i + 1; j < E.size(); j += 7) {
            if (E[j].black == E[i].black || E[j].white == E[i].white) continue;
            const double w2 = ens.probability([&](const Tiling& t) {
                return t.match[E[i].black] == E[i].white && t.match[E[j].black] == E[j].white;
            });
            worst = std::max(worst, std::abs(dimer_correlation({{E[i].black, E[i].white}, {E[j].black, E[j].white}},
                                                               Ka, Kinv) - w2));
            ++pairs;
        }
    }
    c.require(worst < 1e-9, "Kenyon vs enumeration");
    c.msg << E.size() << " edges, " << pairs << " pairs, max err " << fmt(worst) << "; ";

    ChainConfig cfg;
    cfg.seed = 1;
    cfg.n_samples = 100000;
    const auto S = sample_all(g, cfg);
    double zmax = 0;
    int edges = 0;
    for (int w : {0, 7, 19, 30})
        for (int b : g.white_neighbors(w)) {
            const double exact = (KaE[b][w] * KinvE[w][b]).re.get_d();
            const Estimate e = empirical_edge_probability(S, b, w);
            const double z = e.stderr_ > 0 ? std::abs(e.p - exact) / e.stderr_ : (e.p == exact ? 0 : INFINITY);
            zmax = std::max(zmax, z);
            ++edges;
        }
    c.require(zmax <= 3, "MCMC within 3 sigma");
    c.msg << "MCMC 1e5 samples, " << edges << " edges, max |z|=" << fmt(zmax);
}

void c4_trace(Check& c) {
    const auto p = DiamondParams::make(4, 2, 1);
    DualGraph g(p);
    FiniteKernels fk(p, Method::Quadrature, 1e-13);
    std::map<int, double> tr;
    for (const auto& b : g.blacks()) tr[b.xi / 2] += fk.L(b.xi, b.eta, b.xi, b.eta);
    double worst = 0;
    for (auto [s, v] : tr) {
        const auto [blue, red] = expected_line_counts(p, s);
        worst = std::max(worst, std::abs(v - (blue + red)));
    }
    c.require(worst < 1e-8, "trace");
    c.msg << tr.size() << " lines, max |trace - count| " << fmt(worst);
}

void c5_kl(Check& c) {
    std::mt19937 rng(2024);
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2)}) {
        const auto p = DiamondParams::make(4, 2, a);
        DualGraph g(p);
        FiniteKernels fk(p, Method::Quadrature, 1e-13);
        std::uniform_int_distribution<size_t> pick(0, g.blacks().size() - 1);
        double worst = 0;
        for (int t = 0; t < 50; ++t) {
            const KCoord b1 = g.blacks()[pick(rng)], b2 = g.blacks()[pick(rng)];
            worst = std::max(worst, kl_check(fk, {b1.xi, b1.eta}, {b2.xi, b2.eta}));
        }
        c.require(worst < 1e-10, "KL residual");
        c.msg << "a=" << a << ": max residual " << fmt(worst) << "; ";
    }
}

const std::vector<std::vector<GapLine>>& gap_configs() {
    static const std::vector<std::vector<GapLine>> cfgs = {
        {{1, 1, 3}}, {{2, -1, 5}}, {{3, 1, 7}}, {{4, 3, 5}}, {{5, -1, 7}}, {{0, -1, 7}},
        {{2, 1, 3}, {3, 3, 5}}, {{1, -1, 1}, {4, 1, 7}}, {{3, -1, 3}, {4, -1, 3}}, {{5, 1, 5}, {6, 3, 7}}};
    return cfgs;
}

void c6_gap(Check& c) {
    const auto p = DiamondParams::make(4, 2, 1);
    DualGraph g(p);
    Ensemble ens(g);
    FiniteKernels fk(p, Method::Quadrature, 1e-13);
    double worst = 0;
    for (const auto& cfg : gap_configs()) {
        std::vector<int> bs;
        for (const auto& L : cfg)
            for (int b = 0; b < (int)g.blacks().size(); ++b) {
                const auto& q = g.blacks()[b];
                if (q.xi == 2 * L.s && q.eta >= L.k && q.eta <= L.l) bs.push_back(b);
            }
        const double want = ens.probability([&](const Tiling& t) {
            for (int b : bs)
                if (L_dot(g, t, b)) return false;
            return true;
        });
        worst = std::max(worst, std::abs(gap_probability(fk, cfg) - want));
    }
    c.require(worst < 1e-8, "gap");
    c.msg << gap_configs().size() << " configurations, max err " << fmt(worst);
}

void c7_oracle(Check& c) {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> small(-3, 3), idx(0, 9), k(3, 8), eta(0, 3), xi(0, 5);
    double worst = 0;
    int n = 0;
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2), mpq_class(2, 3)}) {
        const auto p = DiamondParams::make(4, 2, a);
        auto fe = exact_kernels(p);
        QuadKernels fq(p, QuadEvaluator(a.get_d(), 1e-13));
        auto rel = [&](double q, const mpq_class& e) {
            worst = std::max(worst, std::abs(q - e.get_d()) / std::max(1.0, std::abs(e.get_d())));
            ++n;
        };
        for (int t = 0; t < 20; ++t) {
            const long x = small(rng), y = small(rng), R = idx(rng), Q = idx(rng), kk = k(rng), j = k(rng);
            const long e1 = 2 * eta(rng) + 1, e2 = 2 * eta(rng) + 1, x1 = 2 * xi(rng), x2 = 2 * xi(rng);
            rel(fq.psi(R, Q, x, y), fe.psi(R, Q, x, y));
            rel(fq.Kn(j, kk), fe.Kn(j, kk));
            rel(fq.A_func(x1, e1, kk), fe.A_func(x1, e1, kk));
            rel(fq.B_func(x2, e2, kk), fe.B_func(x2, e2, kk));
            rel(fq.a_func(x, Q, kk), fe.a_func(x, Q, kk));
            rel(fq.b_func(y, R, kk), fe.b_func(y, R, kk));
            rel(fq.S_kernel(R, x, Q, y), fe.S_kernel(R, x, Q, y));
        }
    }
    c.require(worst < 1e-10, "quadrature vs exact");
    c.msg << n << " values, max rel err " << fmt(worst) << "; ";
    long nonzero = 0, terms = 0;
    for (mpq_class a : {mpq_class(1), mpq_class(1, 2), mpq_class(2, 5)}) {
        auto fk = exact_kernels(DiamondParams::make(4, 2, a));
        for (long r = 0; r < 3; ++r)
            for (long s = r + 1; s < 4; ++s)
                for (long x1 = -2; x1 <= 2; ++x1)
                    for (long x2 = -2; x2 <= 2; ++x2) {
                        const mpq_class v = a * fk.psi_tilde(2 * r, 2 * s + 1, x1, x2) +
                                            fk.psi_tilde(2 * r, 2 * s + 1, x1, x2 + 1) -
                                            fk.psi_tilde(2 * r, 2 * s + 3, x1, x2 + 1) +
                                            a * fk.psi_tilde(2 * r, 2 * s + 3, x1, x2 + 2);
                        nonzero += v != 0;
                        ++terms;
                    }
    }
    c.require(nonzero == 0, "four-term identity");
    c.msg << "four-term identity: " << nonzero << " of " << terms << " nonzero";
}

void c8_tacnode(Check& c) {
    for (auto [beta, rho] : {std::pair{0.0, 2}, {0.5, 3}}) {
        TacnodeKernel T({beta, rho});
        const LimitPoint grid[5] = {{0, -0.6}, {1, -0.25}, {2, 0.1}, {rho, 0.35}, {rho + 1, 0.7}};
        double sym = 0, tail = 0, tailB = 0;
        for (const auto& p1 : grid)
            for (const auto& p2 : grid) {
                const double k = T.kernel(p1, p2);
                sym = std::max(sym, std::abs(k - T.kernel_mirrored(p1, p2)));
                const double base = T.gue_minor(p1.u, beta - p1.y, p2.u, beta - p2.y);
                tail = std::max(tail, std::abs(k - base - T.perturbation(p1, p2, rho + std::max(0, -p2.u) + 8)));
            }
        for (int u = -2; u <= 3; ++u)
            for (int l = std::max(0, -u); l < std::max(0, -u) + 4; ++l)
                tailB = std::max(tailB, std::abs(T.calB(0.3, u, l)));
        c.require(sym < 1e-7, "symmetry / two forms");
        c.require(tailB < 1e-10 && tail < 1e-10, "finite rank");
        c.msg << "beta=" << beta << " rho=" << rho << ": |(*)-(**)|=" << fmt(sym) << " B tail " << fmt(tailB)
              << " sum tail " << fmt(tail) << "; ";
    }
}

void c9_scaling(Check& c) {
    {
        ScalingParams sp{8, 0, 0, 2};
        auto fk = exact_kernels(sp.diamond());
        double worst = 0;
        bool exact = true;
        for (auto [u1, Y1, u2, Y2] : {std::array<long, 4>{0, 0, 0, 0}, {1, 1, 0, -1}, {0, -1, 2, 2}, {2, 0, 0, 1},
                                      {3, -2, 1, 1}, {1, 2, 2, -1}}) {
            const auto r = lc_identity(fk, sp, u1, Y1, u2, Y2);
            worst = std::max(worst, r.residual);
            exact &= r.exact_equal;
        }
        c.require(worst < 1e-8, "decomposition identity");
        c.msg << "t=8 decomposition residual " << fmt(worst) << (exact ? " (exact)" : "") << "; ";
    }
    const std::vector<LadderPoint> Lpts = {{1, 1.0 / 3, 0, -1.0 / 3}, {0, -1.0 / 3, 1, 2.0 / 3}, {2, 0, 0, 1.0 / 3},
                                           {1, 2.0 / 3, 2, 0}};
    for (auto fam : {LimitFamily::L, LimitFamily::K})
        for (mpq_class beta : {mpq_class(0), mpq_class(1, 2)}) {
            const auto rep = converge_tacnode(fam, beta, 2, {9, 36, 144}, Lpts);
            bool dec = true;
            for (size_t i = 1; i < rep.rows.size(); ++i) dec &= rep.rows[i].max_error < rep.rows[i - 1].max_error;
            const bool slope_ok = rep.slope >= -1.0 && rep.slope <= -0.25;
            c.require(dec && slope_ok, "ladder " + to_string(fam));
            c.msg << to_string(fam) << " beta=" << beta << ":";
            for (const auto& r : rep.rows) c.msg << " " << fmt(r.max_error);
            c.msg << " slope " << fmt(rep.slope) << "; ";
        }
}

void c10_interlacing(Check& c) {
    {
        const auto p = DiamondParams::make(4, 2, 1);
        DualGraph g(p);
        HeightLattice hl(g);
        long long bad = 0;
        const long long N = enumerate_tilings(g, [&](const Tiling& t) {
            bad += !check_interlacing(extract_L_particles(hl, g, t), p).ok;
        });
        c.require(bad == 0, "enumerated");
        c.msg << "n=4: " << N - bad << "/" << N << " tilings pass; ";
    }
    const auto p = DiamondParams::make(12, 4, 1);
    DualGraph g(p);
    HeightLattice hl(g);
    ChainConfig cfg;
    cfg.seed = 5;
    cfg.n_samples = 10000;
    long long bad = 0, total = 0;
    std::string first;
    sample(g, cfg, [&](const Tiling& t) {
        const auto rep = check_interlacing(extract_L_particles(hl, g, t), p);
        if (!rep.ok && first.empty()) first = rep.violation;
        bad += !rep.ok;
        ++total;
    });
    c.require(bad == 0, "sampled: " + first);
    c.msg << "n=12 MCMC: " << total - bad << "/" << total << " samples pass";
}

struct CriterionDef {
    int id;
    const char* name;
    bool fast;
    void (*run)(Check&);
};

const CriterionDef kCriteria[] = {
    {1, "partition function equals weighted tiling count", true, c1_partition},
    {2, "inverse Kasteleyn formula", true, c2_inverse},
    {3, "edge correlations vs enumeration and MCMC", true, c3_kenyon},
    {4, "L-kernel trace gives line counts", true, c4_trace},
    {5, "K/L relation", true, c5_kl},
    {6, "gap probabilities vs enumeration", true, c6_gap},
    {7, "quadrature vs exact residues", true, c7_oracle},
    {8, "tacnode kernel symmetry and finite rank", true, c8_tacnode},
    {9, "scaling limits", false, c9_scaling},
    {10, "interlacing", false, c10_interlacing},
};

}  // namespace

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << fmt(r.seconds) << " s): " << r.detail;
    return os.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& report) {
    std::vector<CriterionResult> out;
    for (const auto& s : kCriteria) {
        if (opt.fast_only && !s.fast) continue;
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), s.id) == opt.only.end()) continue;
        CriterionResult r;
        r.id = s.id;
        r.name = s.name;
        r.fast = s.fast;
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            s.run(c);
            r.pass = c.ok;
        } catch (const std::exception& e) {
            r.pass = false;
            c.msg << "exception: " << e.what();
        }
        r.detail = c.msg.str();
        while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';')) r.detail.pop_back();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (report) report(r);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace aztec
