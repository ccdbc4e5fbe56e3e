#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aztec/acceptance.hpp"
#include "aztec/asymptotics.hpp"
#include "aztec/kasteleyn.hpp"
#include "aztec/kernels_finite.hpp"
#include "aztec/kernels_limit.hpp"
#include "aztec/render.hpp"
#include "aztec/sampler.hpp"
#include "aztec/tiling.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace aztec;

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 1;
    double tol = 1e-12;
    int threads = 1;
    std::string out_dir;
};

struct Diamond {
    int n = 4;
    int rho = 2;
    std::string a = "1";

    DiamondParams params() const { return DiamondParams::make(n, rho, parse_rational(a)); }
};

void add_diamond(CLI::App* sc, Diamond& d) {
    sc->add_option("--n", d.n, "diamond size")->capture_default_str();
    sc->add_option("--rho", d.rho, "overlap")->capture_default_str();
    sc->add_option("--a", d.a, "vertical weight, decimal or p/q")->capture_default_str();
}

std::string now_utc() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << content;
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

fs::path resolve_out(const Globals& g, const std::string& out) {
    if (out.empty()) return {};
    fs::path p(out);
    if (p.is_relative() && !g.out_dir.empty()) p = fs::path(g.out_dir) / p;
    return p;
}

void write_manifest(const fs::path& dir, const std::string& command, const json& params, const Globals& g,
                    const std::vector<std::string>& outputs, const std::string& started) {
    json m;
    m["schema"] = "aztec/manifest/1";
    m["command"] = command;
    m["artifact_version"] = kVersion;
    m["params"] = params;
    m["seed"] = g.seed;
    m["tolerances"] = {{"tol", g.tol}};
    m["threads"] = g.threads;
    m["rng"] = kRngName;
    m["started"] = started;
    m["finished"] = now_utc();
    m["outputs"] = outputs;
    write_atomic(dir / "manifest.json", m.dump(2) + "\n");
}

// JSON document to --out (with a manifest next to it) or stdout
void emit(const json& doc, const Globals& g, const std::string& out, const std::string& command, const json& params,
          const std::string& started) {
    const std::string text = doc.dump(2) + "\n";
    const fs::path p = resolve_out(g, out);
    if (p.empty()) {
        std::cout << text;
        return;
    }
    write_atomic(p, text);
    write_manifest(p.has_parent_path() ? p.parent_path() : fs::path("."), command, params, g,
                   {p.filename().string()}, started);
}

json diamond_json(const DiamondParams& p) {
    return {{"n", p.n}, {"rho", p.rho}, {"m", p.m()}, {"a", p.a.get_str()}};
}

json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open " + path);
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

// {"points": [[...], ...]} or {"grid": [[axis0 values], [axis1 values], ...]}, or a bare array of points
std::vector<std::vector<double>> load_points(const std::string& path, size_t arity) {
    const json j = load_json(path);
    std::vector<std::vector<double>> pts;
    const json* list = j.is_array() ? &j : (j.contains("points") ? &j["points"] : nullptr);
    if (list) {
        for (const auto& p : *list) {
            if (!p.is_array() || p.size() != arity)
                throw UsageError("each point needs " + std::to_string(arity) + " coordinates");
            pts.push_back(p.get<std::vector<double>>());
        }
        return pts;
    }
    if (j.contains("grid")) {
        const auto axes = j["grid"].get<std::vector<std::vector<double>>>();
        if (axes.size() != arity) throw UsageError("grid needs " + std::to_string(arity) + " axes");
        std::vector<double> cur(arity);
        std::function<void(size_t)> rec = [&](size_t d) {
            if (d == arity) {
                pts.push_back(cur);
                return;
            }
            for (double v : axes[d]) {
                cur[d] = v;
                rec(d + 1);
            }
        };
        rec(0);
        return pts;
    }
    throw UsageError("points file needs \"points\" or \"grid\"");
}

long as_int(double v, const char* what) {
    if (std::floor(v) != v) throw UsageError(std::string(what) + " coordinates must be integers");
    return long(v);
}

// ---- sample

struct SampleArgs {
    Diamond d;
    long long samples = 1;
    long long burn_in = 0;
    long long thinning = 0;
    int chain = 0;
    std::string out = "samples";
};

int run_sample(const SampleArgs& s, const Globals& g) {
    const std::string started = now_utc();
    const auto p = s.d.params();
    DualGraph graph(p);
    ChainConfig cfg;
    cfg.seed = g.seed;
    cfg.n_samples = s.samples;
    cfg.burn_in_flips = s.burn_in;
    cfg.thinning_flips = s.thinning;
    cfg.chain = s.chain;
    const ChainConfig r = cfg.resolved(p);
    const fs::path dir = resolve_out(g, s.out);
    fs::create_directories(dir);
    std::vector<std::string> outputs;
    HeightLattice hl(graph);
    long long i = 0;
    sample(graph, cfg, [&](const Tiling& t) {
        char name[64];
        std::snprintf(name, sizeof name, "tiling_%05lld.csv", i);
        std::ostringstream ts;
        write_tiling_csv(ts, graph, t);
        write_atomic(dir / name, ts.str());
        outputs.push_back(name);
        std::snprintf(name, sizeof name, "particles_%05lld.csv", i);
        std::ostringstream ps;
        write_particles_csv(ps, extract_L_particles(hl, graph, t));
        write_atomic(dir / name, ps.str());
        outputs.push_back(name);
        ++i;
    });
    json params = diamond_json(p);
    params["samples"] = r.n_samples;
    params["burn_in_flips"] = r.burn_in_flips;
    params["thinning_flips"] = r.thinning_flips;
    params["chain"] = r.chain;
    write_manifest(dir, "sample", params, g, outputs, started);
    std::cout << json{{"schema", "aztec/sample/1"}, {"directory", dir.string()}, {"samples", i}}.dump() << "\n";
    return 0;
}

// ---- render

struct RenderArgs {
    Diamond d;
    std::string tiling;
    std::string out = "tiling.svg";
    bool level_lines = false, L = false, K = false, counts = false, no_legend = false;
    double unit = 6;
};

int run_render(const RenderArgs& a, const Globals& g) {
    const std::string started = now_utc();
    const auto p = a.d.params();
    DualGraph graph(p);
    Tiling t;
    if (!a.tiling.empty()) {
        std::ifstream is(a.tiling);
        if (!is) throw UsageError("cannot open " + a.tiling);
        t = read_tiling_csv(is, graph);
    } else {
        ChainConfig cfg;
        cfg.seed = g.seed;
        t = sample_all(graph, cfg).front();
    }
    RenderStyle st;
    st.unit = a.unit;
    st.legend = !a.no_legend;
    st.level_lines = a.level_lines;
    st.L_particles = a.L;
    st.K_particles = a.K;
    st.line_counts = a.counts;
    const std::string svg = render_tiling_svg(graph, t, st);
    const fs::path out = resolve_out(g, a.out);
    write_atomic(out, svg);
    json params = diamond_json(p);
    params["tiling"] = a.tiling.empty() ? json("sampled") : json(a.tiling);
    params["style"] = {{"unit", st.unit}, {"legend", st.legend}, {"level_lines", st.level_lines},
                       {"L_particles", st.L_particles}, {"K_particles", st.K_particles},
                       {"line_counts", st.line_counts}};
    write_manifest(out.has_parent_path() ? out.parent_path() : fs::path("."), "render", params, g,
                   {out.filename().string()}, started);
    return 0;
}

// ---- kernel-eval

struct KernelArgs {
    Diamond d;
    std::string family = "L";
    std::string method = "quadrature";
    std::string beta = "0";
    int size = 0;
    std::string points;
    std::string out;
};

int run_kernel_eval(const KernelArgs& k, const Globals& g) {
    const std::string started = now_utc();
    json doc;
    doc["schema"] = "aztec/kernel-eval/1";
    json params;
    std::vector<std::vector<double>> pts = load_points(k.points, 4);
    json values = json::array(), errs = json::array(), pj = json::array();
    if (k.family == "tacnode") {
        const mpq_class beta = parse_rational(k.beta);
        if (k.d.rho < 0) throw UsageError("rho must be nonnegative");
        TacnodeKernel T({beta.get_d(), k.d.rho}, g.tol);
        params = {{"family", "tacnode"}, {"beta", beta.get_str()}, {"rho", k.d.rho}};
        doc["method"] = "quadrature";
        for (const auto& p : pts) {
            const double v = T.kernel({int(as_int(p[0], "u")), p[1]}, {int(as_int(p[2], "u")), p[3]});
            values.push_back(v);
            errs.push_back(std::max(g.tol, T.resolvent().certificate));
            pj.push_back(p);
        }
    } else {
        const auto dp = k.d.params();
        const Method m = method_from_string(k.method);
        FiniteKernels fk(dp, m, g.tol);
        params = diamond_json(dp);
        params["family"] = k.family;
        doc["method"] = to_string(m);
        for (const auto& p : pts) {
            const long c0 = as_int(p[0], k.family.c_str()), c1 = as_int(p[1], k.family.c_str()),
                       c2 = as_int(p[2], k.family.c_str()), c3 = as_int(p[3], k.family.c_str());
            double cert = 0, v;
            if (k.family == "L")
                v = fk.L(c0, c1, c2, c3, &cert);
            else if (k.family == "K")
                v = fk.K(c0, c1, c2, c3, &cert);
            else if (k.family == "one-aztec") {
                const int N = k.size > 0 ? k.size : dp.n;
                params["size"] = N;
                v = fk.one_aztec(N, c0, c1, c2, c3);
            } else
                throw UsageError("unknown family " + k.family);
            values.push_back(v);
            errs.push_back(m == Method::Exact ? cert : std::max(cert, g.tol));
            pj.push_back({c0, c1, c2, c3});
        }
    }
    doc["params"] = params;
    doc["points"] = pj;
    doc["values"] = values;
    doc["error_estimates"] = errs;
    emit(doc, g, k.out, "kernel-eval", params, started);
    return 0;
}

// ---- gap-prob

struct GapArgs {
    Diamond d;
    std::vector<std::string> lines;
    std::string intervals;
    std::string method = "quadrature";
    std::string out;
};

int run_gap(const GapArgs& a, const Globals& g) {
    const std::string started = now_utc();
    std::vector<GapLine> lines;
    for (const auto& s : a.lines) {
        GapLine L{};
        char c1, c2;
        std::istringstream is(s);
        if (!(is >> L.s >> c1 >> L.k >> c2 >> L.l) || c1 != ':' || c2 != ':')
            throw UsageError("--line expects s:k:l, got " + s);
        lines.push_back(L);
    }
    if (!a.intervals.empty())
        for (const auto& e : load_json(a.intervals).at("lines"))
            lines.push_back({e.at("s").get<long>(), e.at("k").get<long>(), e.at("l").get<long>()});
    const auto dp = a.d.params();
    const Method m = method_from_string(a.method);
    FiniteKernels fk(dp, m, g.tol);
    json params = diamond_json(dp);
    json lj = json::array();
    for (const auto& L : lines) lj.push_back({{"s", L.s}, {"k", L.k}, {"l", L.l}});
    params["lines"] = lj;
    json doc;
    doc["schema"] = "aztec/gap-prob/1";
    doc["params"] = params;
    doc["method"] = to_string(m);
    if (m == Method::Exact) {
        const mpq_class v = gap_probability_exact(*fk.exact(), lines);
        doc["probability"] = v.get_d();
        doc["exact"] = v.get_str();
    } else {
        doc["probability"] = gap_probability(fk, lines);
    }
    emit(doc, g, a.out, "gap-prob", params, started);
    return 0;
}

// ---- verify-inverse-kasteleyn

struct VerifyArgs {
    Diamond d;
    std::string path = "kernel";
    double check_tol = 1e-9;
    std::string out;
};

int run_verify(const VerifyArgs& v, const Globals& g) {
    const std::string started = now_utc();
    const auto dp = v.d.params();
    DualGraph graph(dp);
    FiniteKernels fk(dp, Method::Quadrature, g.tol);
    const auto Ka = build_Ka(graph);
    InversePath path;
    if (v.path == "kernel")
        path = InversePath::Kernel;
    else if (v.path == "eynard-mehta")
        path = InversePath::EynardMehta;
    else
        throw UsageError("--path must be kernel or eynard-mehta");
    const auto C = inverse_formula(graph, fk, path);
    const auto rep = verify_identity_cases(graph, Ka, C, v.check_tol);
    const auto S = inverse_solve(Ka);
    double diff = 0;
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = 0; j < C[i].size(); ++j) diff = std::max(diff, std::abs(C[i][j] - S[i][j]));
    json params = diamond_json(dp);
    params["path"] = v.path;
    params["check_tol"] = v.check_tol;
    json classes = json::object();
    for (const auto& [cls, r] : rep.max_residual)
        classes[to_string(cls)] = {{"rows", rep.rows.at(cls)}, {"max_residual", r}};
    json doc;
    doc["schema"] = "aztec/verify-inverse/1";
    doc["params"] = params;
    doc["passed"] = rep.passed && diff < v.check_tol;
    doc["classes"] = classes;
    doc["max_formula_minus_solve"] = diff;
    if (!rep.passed)
        doc["first_failure"] = {{"class", to_string(rep.first_fail_class)},
                                {"black", {rep.first_fail_black.xi, rep.first_fail_black.eta}},
                                {"column", {rep.first_fail_black_column.xi, rep.first_fail_black_column.eta}}};
    emit(doc, g, v.out, "verify-inverse-kasteleyn", params, started);
    return doc["passed"].get<bool>() ? 0 : 1;
}

// ---- converge-tacnode

struct ConvergeArgs {
    std::string beta = "0";
    int rho = 2;
    std::vector<long> ts{9, 36, 144};
    std::string family = "L";
    std::string points;
    std::string out;
};

int run_converge(const ConvergeArgs& c, const Globals& g) {
    const std::string started = now_utc();
    std::vector<LadderPoint> pts;
    if (c.points.empty())
        pts = {{1, 1.0 / 3, 0, -1.0 / 3}, {0, -1.0 / 3, 1, 2.0 / 3}, {2, 0, 0, 1.0 / 3}, {1, 2.0 / 3, 2, 0}};
    else
        for (const auto& p : load_points(c.points, 4)) pts.push_back({as_int(p[0], "u"), p[1], as_int(p[2], "u"), p[3]});
    LimitFamily fam;
    if (c.family == "L")
        fam = LimitFamily::L;
    else if (c.family == "K")
        fam = LimitFamily::K;
    else
        throw UsageError("--family must be L or K");
    const mpq_class beta = parse_rational(c.beta);
    const auto rep = converge_tacnode(fam, beta, c.rho, c.ts, pts, g.tol);
    json params = {{"family", c.family}, {"beta", beta.get_str()}, {"rho", c.rho}, {"t_list", c.ts}};
    json pj = json::array();
    for (const auto& p : pts) pj.push_back({p.u1, p.y1, p.u2, p.y2});
    params["points"] = pj;
    json rows = json::array();
    for (const auto& r : rep.rows) {
        json snapped = json::array();
        for (size_t i = 0; i < r.y1_snapped.size(); ++i) snapped.push_back({r.y1_snapped[i], r.y2_snapped[i]});
        rows.push_back({{"t", r.t},
                        {"a", r.a},
                        {"y_snapped", snapped},
                        {"scaled", r.scaled},
                        {"limit", r.limit},
                        {"error", r.error},
                        {"max_error", r.max_error}});
    }
    json doc;
    doc["schema"] = "aztec/converge-tacnode/1";
    doc["params"] = params;
    doc["rows"] = rows;
    doc["slope"] = rep.rows.size() >= 2 ? json(rep.slope) : json(nullptr);
    doc["monotone"] = rep.monotone;
    emit(doc, g, c.out, "converge-tacnode", params, started);
    return 0;
}

// ---- selftest

int run_selftest(bool fast, const std::vector<int>& only) {
    AcceptanceOptions opt;
    opt.fast_only = fast;
    opt.only = only;
    bool ok = true;
    run_acceptance(opt, [&](const CriterionResult& r) {
        std::cout << format_result(r) << std::endl;
        ok &= r.pass;
    });
    return ok ? 0 : 1;
}

void print_error(const std::string& type, const std::string& message) {
    json e;
    e["schema"] = "aztec/error/1";
    e["error"] = {{"type", type}, {"message", message}};
    std::cout << e.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double Aztec diamond dimer model: sampling, kernels and limits"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value configuration file; flags take precedence");

    Globals g;
    if (const char* env = std::getenv("AZTEC_OUT_DIR")) g.out_dir = env;
    app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
    app.add_option("--tol", g.tol, "quadrature tolerance")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (recorded; computation is sequential)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--out-dir", g.out_dir, "base directory for relative outputs (env AZTEC_OUT_DIR)");

    SampleArgs sa;
    auto* s_sample = app.add_subcommand("sample", "sample tilings with the flip chain");
    add_diamond(s_sample, sa.d);
    s_sample->add_option("--samples", sa.samples)->check(CLI::PositiveNumber)->capture_default_str();
    s_sample->add_option("--burn-in", sa.burn_in, "proposals before the first sample (0: 100 n^3)");
    s_sample->add_option("--thinning", sa.thinning, "proposals between samples (0: n^3)");
    s_sample->add_option("--chain", sa.chain, "chain index mixed into the seed");
    s_sample->add_option("--out", sa.out, "output directory")->capture_default_str();

    RenderArgs ra;
    auto* s_render = app.add_subcommand("render", "render a tiling as SVG");
    add_diamond(s_render, ra.d);
    s_render->add_option("--tiling", ra.tiling, "tiling CSV; sampled from --seed if omitted");
    s_render->add_option("--out", ra.out)->capture_default_str();
    s_render->add_option("--unit", ra.unit, "half square size")->capture_default_str();
    s_render->add_flag("--level-lines", ra.level_lines);
    s_render->add_flag("--L-particles", ra.L);
    s_render->add_flag("--K-particles", ra.K);
    s_render->add_flag("--line-counts", ra.counts);
    s_render->add_flag("--no-legend", ra.no_legend);

    KernelArgs ka;
    auto* s_kernel = app.add_subcommand("kernel-eval", "evaluate a correlation kernel at points");
    add_diamond(s_kernel, ka.d);
    s_kernel->add_option("--family", ka.family)
        ->check(CLI::IsMember({"L", "K", "one-aztec", "tacnode"}))
        ->capture_default_str();
    s_kernel->add_option("--method", ka.method)->check(CLI::IsMember({"quadrature", "exact"}))->capture_default_str();
    s_kernel->add_option("--beta", ka.beta, "tacnode parameter")->capture_default_str();
    s_kernel->add_option("--size", ka.size, "one-aztec size (default n)");
    s_kernel->add_option("--points", ka.points, "JSON file of 4-coordinate points or a grid")->required();
    s_kernel->add_option("--out", ka.out, "JSON output file (stdout if omitted)");

    GapArgs ga;
    auto* s_gap = app.add_subcommand("gap-prob", "probability of no L-particles on line intervals");
    add_diamond(s_gap, ga.d);
    s_gap->add_option("--line", ga.lines, "s:k:l, odd eta in [k,l] on xi = 2s; repeatable");
    s_gap->add_option("--intervals", ga.intervals, "JSON file {\"lines\": [{s,k,l}, ...]}");
    s_gap->add_option("--method", ga.method)->check(CLI::IsMember({"quadrature", "exact"}))->capture_default_str();
    s_gap->add_option("--out", ga.out);

    VerifyArgs va;
    auto* s_verify = app.add_subcommand("verify-inverse-kasteleyn", "check K_a times the kernel formula is I");
    add_diamond(s_verify, va.d);
    s_verify->add_option("--path", va.path)->check(CLI::IsMember({"kernel", "eynard-mehta"}))->capture_default_str();
    s_verify->add_option("--check-tol", va.check_tol)->capture_default_str();
    s_verify->add_option("--out", va.out);

    ConvergeArgs ca;
    auto* s_conv = app.add_subcommand("converge-tacnode", "rescaled finite kernels against the tacnode kernel");
    s_conv->add_option("--beta", ca.beta)->capture_default_str();
    s_conv->add_option("--rho", ca.rho)->capture_default_str();
    s_conv->add_option("--t-list", ca.ts)->delimiter(',')->capture_default_str();
    s_conv->add_option("--family", ca.family)->check(CLI::IsMember({"L", "K"}))->capture_default_str();
    s_conv->add_option("--points", ca.points, "JSON file of [u1, y1, u2, y2] points");
    s_conv->add_option("--out", ca.out);

    bool fast = false;
    std::vector<int> only;
    auto* s_self = app.add_subcommand("selftest", "run the acceptance criteria");
    s_self->add_flag("--fast", fast, "only criteria marked fast");
    s_self->add_option("--only", only, "criterion ids")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*s_sample) return run_sample(sa, g);
        if (*s_render) return run_render(ra, g);
        if (*s_kernel) return run_kernel_eval(ka, g);
        if (*s_gap) return run_gap(ga, g);
        if (*s_verify) return run_verify(va, g);
        if (*s_conv) return run_converge(ca, g);
        if (*s_self) return run_selftest(fast, only);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const QuadratureError& e) {
        print_error("quadrature", e.what());
        return 1;
    } catch (const KernelError& e) {
        print_error("kernel", e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error("computation", e.what());
        return 1;
    }
    return 2;
}
