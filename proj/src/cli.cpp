#include "capdom/cli.hpp"

#include "capdom/io.hpp"
#include "capdom/ladder.hpp"
#include "capdom/oracle.hpp"
#include "capdom/pipeline.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace capdom {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitScale = 4;
constexpr int kExitVerification = 5;

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::string resolve_out(const std::string& path) {
    if (path.empty()) return path;
    const char* dir = std::getenv("CAPDOM_OUT_DIR");
    if (dir == nullptr || *dir == '\0' || path.front() == '/') return path;
    std::string joined(dir);
    if (joined.back() != '/') joined += '/';
    return joined + path;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::string path = resolve_out(out_path);
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
}

bool parse_range(const std::string& text, long long& lo, long long& hi) {
    auto colon = text.find(':');
    if (colon == std::string::npos) return false;
    try {
        lo = std::stoll(text.substr(0, colon));
        hi = std::stoll(text.substr(colon + 1));
    } catch (...) {
        return false;
    }
    return true;
}

struct GenArgs {
    std::string family;
    int n = 10, rows = 3, cols = 3;
    std::uint64_t seed = 0;
    double keep_prob = 0.5;
    std::string cost_range, cap_range, dem_range;
    std::string out;
};

int cmd_gen(const GenArgs& args) {
    WeightRanges ranges;
    if (!args.cost_range.empty() && !parse_range(args.cost_range, ranges.cost_lo, ranges.cost_hi))
        throw ParseError("bad --cost-range, expected lo:hi");
    if (!args.cap_range.empty() && !parse_range(args.cap_range, ranges.cap_lo, ranges.cap_hi))
        throw ParseError("bad --capacity-range, expected lo:hi");
    if (!args.dem_range.empty() && !parse_range(args.dem_range, ranges.dem_lo, ranges.dem_hi))
        throw ParseError("bad --demand-range, expected lo:hi");

    NamedInstance named;
    if (args.family == "outerplanar") {
        OuterplanarOptions opts;
        opts.keep_prob = args.keep_prob;
        opts.weights = ranges;
        named = name_generated(gen_outerplanar(args.n, args.seed, opts));
    } else if (args.family == "grid") {
        named = name_generated(gen_grid(args.rows, args.cols, args.seed, ranges));
        named.grid = {args.rows, args.cols};
    } else {
        throw ParseError("unknown family '" + args.family + "'");
    }
    write_output(serialize_instance(named), args.out);
    return kExitOk;
}

struct SolveArgs {
    std::string input;
    std::string mode = "outerplanar";
    std::string out;
    bool event_log = false;
};

int cmd_solve(const SolveArgs& args) {
    double t0 = now_ms();
    NamedInstance named = load_instance(args.input);
    RotationSystem rs = named.embedding();
    double t1 = now_ms();

    SolveOptions opts;
    opts.event_log = args.event_log;
    SolveResult result;
    if (args.mode == "outerplanar")
        result = solve_outerplanar(named.inst, rs, opts);
    else if (args.mode == "planar")
        result = solve_planar(named.inst, rs, opts);
    else
        throw ParseError("unknown mode '" + args.mode + "' (outerplanar or planar)");
    double t2 = now_ms();

    ResultMeta meta;
    meta.algorithm = args.mode + "-primal-dual";
    meta.mode = args.mode;
    meta.input = args.input;
    meta.timings_ms = {{"load", t1 - t0}, {"solve", t2 - t1}, {"total", t2 - t0}};

    write_output(result_to_json(result, named, meta).dump(2) + "\n", args.out);
    std::cerr << "cost=" << format_rational(result.report.cost)
              << " feasible=" << (result.report.feasible ? "yes" : "no")
              << " dual_sum=" << format_rational(result.dual_sum)
              << " certified=" << (result.certified ? "yes" : "no") << " parts=" << result.parts.size()
              << " solve_ms=" << t2 - t1 << "\n";
    if (args.event_log)
        for (const auto& cert : result.parts)
            for (const auto& line : cert.events)
                std::cerr << "[component " << cert.component << " residue " << cert.residue << "] "
                          << line << "\n";
    return result.report.feasible ? kExitOk : kExitVerification;
}

struct ExactArgs {
    std::string input;
    int cap = 10;
    std::string out;
};

int cmd_exact(const ExactArgs& args) {
    double t0 = now_ms();
    NamedInstance named = load_instance(args.input);
    ExactSolution solution = exact_opt(named.inst, args.cap);
    double t1 = now_ms();

    ResultMeta meta;
    meta.algorithm = "exact-enumeration";
    meta.mode = "exact";
    meta.input = args.input;
    meta.timings_ms = {{"total", t1 - t0}};
    write_output(exact_to_json(solution, named, meta).dump(2) + "\n", args.out);
    std::cerr << "opt=" << format_rational(solution.opt) << "\n";
    return kExitOk;
}

struct VerifyArgs {
    std::string instance_path, result_path;
};

int cmd_verify(const VerifyArgs& args) {
    NamedInstance named = load_instance(args.instance_path);
    std::ifstream in(args.result_path);
    if (!in) throw ParseError("cannot open '" + args.result_path + "'");
    nlohmann::json result;
    try {
        in >> result;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed result json: ") + e.what());
    }

    VerifyReport report = verify_result(named, result);
    if (report.ok) {
        std::cout << "verification passed\n";
        return kExitOk;
    }
    for (const auto& failure : report.failures) std::cout << "FAIL: " << failure << "\n";
    return kExitVerification;
}

struct GapArgs {
    std::string alpha = "10";
    int n = 10;
    int cap = 10;
};

int cmd_gapdemo(const GapArgs& args) {
    GapReport report = lp_gap_demo(parse_rational(args.alpha), args.n, args.cap);
    std::cout << "alpha = " << format_rational(report.alpha) << "\n";
    std::cout << "n = " << report.n << "\n";
    std::cout << "fractional cost (without the demand-multiplicity constraint) = "
              << format_rational(report.fractional_cost) << "\n";
    std::cout << "integer optimum = " << format_rational(report.integer_opt) << "\n";
    std::cout << "integrality gap = " << format_rational(report.gap) << "\n";
    std::cout << "constraint families one and two hold: "
              << (report.relaxed_constraints_hold ? "yes" : "no") << "\n";
    std::cout << "demand-multiplicity constraint violations: " << report.third_violations.size()
              << "\n";
    for (const auto& v : report.third_violations)
        std::cout << "  d(v" << v.v << ") * x(v" << v.u << ") = " << format_rational(v.lhs)
                  << " < f = " << format_rational(v.rhs) << "\n";
    bool as_expected = report.relaxed_constraints_hold && !report.third_violations.empty() &&
                       report.gap == report.alpha;
    return as_expected ? kExitOk : kExitVerification;
}

struct DotArgs {
    std::string input;
    std::string anchor;
    std::string out;
};

int cmd_dot(const DotArgs& args) {
    NamedInstance named = load_instance(args.input);
    RotationSystem rs = named.embedding();
    int anchor;
    if (args.anchor.empty()) {
        anchor = rs.outer_walks.front().front();
    } else {
        anchor = named.id_of(args.anchor);
        if (anchor < 0) throw ValidationError("unknown anchor '" + args.anchor + "'");
    }
    GeneralLadder ladder = extract_ladder(named.inst, rs, anchor);
    write_output(ladder_to_dot(ladder, named.inst, named.names), args.out);
    return kExitOk;
}

struct BenchArgs {
    std::string sizes = "250,500,1000,2000";
    std::uint64_t seed = 1;
    int repeats = 3;
};

int cmd_bench(const BenchArgs& args) {
    std::vector<int> sizes;
    std::istringstream is(args.sizes);
    std::string tok;
    while (std::getline(is, tok, ',')) sizes.push_back(std::stoi(tok));

    std::vector<double> log_n, log_t;
    std::cout << "n\tsolve_ms (median of " << args.repeats << ")\n";
    for (int n : sizes) {
        auto gen = gen_outerplanar(n, args.seed + n);
        std::vector<double> times;
        for (int r = 0; r < args.repeats; ++r) {
            double t0 = now_ms();
            auto result = solve_outerplanar(gen.inst, gen.rs);
            double t1 = now_ms();
            if (!result.report.feasible) throw ValidationError("infeasible benchmark solve");
            times.push_back(t1 - t0);
        }
        std::sort(times.begin(), times.end());
        double median = times[times.size() / 2];
        std::cout << n << "\t" << median << "\n";
        log_n.push_back(std::log(static_cast<double>(n)));
        log_t.push_back(std::log(std::max(median, 1e-3)));
    }
    if (sizes.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < log_n.size(); ++i) {
            sx += log_n[i];
            sy += log_t[i];
            sxx += log_n[i] * log_n[i];
            sxy += log_n[i] * log_t[i];
        }
        double k = static_cast<double>(log_n.size());
        double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
        std::cout << "fitted growth exponent: " << slope << "\n";
    }
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"capacitated domination on outerplanar and planar graphs"};
    app.require_subcommand(1);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a random instance file");
    gen->add_option("family", gen_args.family, "outerplanar | grid")->required();
    gen->add_option("--n", gen_args.n, "vertex count (outerplanar)");
    gen->add_option("--rows", gen_args.rows, "grid rows");
    gen->add_option("--cols", gen_args.cols, "grid cols");
    gen->add_option("--seed", gen_args.seed, "rng seed");
    gen->add_option("--keep-prob", gen_args.keep_prob, "chord survival probability");
    gen->add_option("--cost-range", gen_args.cost_range, "lo:hi");
    gen->add_option("--capacity-range", gen_args.cap_range, "lo:hi");
    gen->add_option("--demand-range", gen_args.dem_range, "lo:hi");
    gen->add_option("--out", gen_args.out, "output path (default stdout)");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "run the approximation pipeline");
    solve->add_option("input", solve_args.input, "instance file")->required();
    solve->add_option("--mode", solve_args.mode, "outerplanar | planar");
    solve->add_option("--out", solve_args.out, "result json path (default stdout)");
    solve->add_flag("--event-log", solve_args.event_log, "log saturation events");

    ExactArgs exact_args;
    auto* exact = app.add_subcommand("exact", "exact optimum (desk-scale instances)");
    exact->add_option("input", exact_args.input, "instance file")->required();
    exact->add_option("--oracle-cap", exact_args.cap, "max vertex count");
    exact->add_option("--out", exact_args.out, "result json path (default stdout)");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "re-check a result file");
    verify->add_option("instance", verify_args.instance_path, "instance file")->required();
    verify->add_option("result", verify_args.result_path, "result json")->required();

    GapArgs gap_args;
    auto* gap = app.add_subcommand("gapdemo", "integrality-gap construction");
    gap->add_option("alpha", gap_args.alpha, "gap parameter, rational > 1");
    gap->add_option("n", gap_args.n, "star size");
    gap->add_option("--oracle-cap", gap_args.cap, "max vertex count for the oracle");

    DotArgs dot_args;
    auto* dot = app.add_subcommand("dot", "export the ladder layering as DOT");
    dot->add_option("input", dot_args.input, "instance file (connected, with embedding)")
        ->required();
    dot->add_option("--anchor", dot_args.anchor, "anchor vertex name");
    dot->add_option("--out", dot_args.out, "output path (default stdout)");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "timing series for the outerplanar solver");
    bench->add_option("--sizes", bench_args.sizes, "comma-separated vertex counts");
    bench->add_option("--seed", bench_args.seed, "rng seed");
    bench->add_option("--repeats", bench_args.repeats, "runs per size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*gen) return cmd_gen(gen_args);
        if (*solve) return cmd_solve(solve_args);
        if (*exact) return cmd_exact(exact_args);
        if (*verify) return cmd_verify(verify_args);
        if (*gap) return cmd_gapdemo(gap_args);
        if (*dot) return cmd_dot(dot_args);
        if (*bench) return cmd_bench(bench_args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ScaleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitScale;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitParse;
}

} // namespace capdom
