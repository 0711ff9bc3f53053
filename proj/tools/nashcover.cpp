// Command-line front end: generate, solve, brute-force, verify, reduce,
// benchmark, and numeric self-checks, all speaking the JSON formats in
// README.md.
//
// Exit codes: 0 success; 2 invalid input (parse, validation, I/O, usage);
// 3 internal guard violation; 4 search space too large; 5 verification
// failure; 6 self-check failure.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nashcover/nashcover.hpp"

namespace {

using namespace nashcover;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitGuard = 3;
constexpr int kExitTooLarge = 4;
constexpr int kExitVerifyFailed = 5;
constexpr int kExitSelfCheckFailed = 6;

void emit_to(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file_atomic(out_path, content);
}

struct GenArgs {
    std::string spec_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> n, T;
    std::string kind;
    std::optional<int> sets_per_round, set_size_min, set_size_max;
    std::optional<std::int64_t> demand_min, demand_max, supply_min, supply_max;
    std::optional<int> k_min, k_max;
    std::optional<int> parts, limit_min, limit_max;
    std::optional<int> slots;
    std::optional<double> density;
};

int run_gen(const GenArgs& a) {
    GenSpec spec;
    if (!a.spec_path.empty()) {
        spec = parse_genspec_json(read_text_file(a.spec_path));
    } else {
        if (!a.n || !a.T || a.kind.empty())
            throw invalid_input_error("gen: need --spec, or --n, --T and --kind");
        spec.n = *a.n;
        spec.T = *a.T;
        spec.kind = iodetail::parse_kind(a.kind, "gen");
    }
    if (a.seed) spec.seed = *a.seed;
    if (a.n) spec.n = *a.n;
    if (a.T) spec.T = *a.T;
    if (a.sets_per_round) spec.sets_per_round = *a.sets_per_round;
    if (a.set_size_min) spec.set_size_min = *a.set_size_min;
    if (a.set_size_max) spec.set_size_max = *a.set_size_max;
    if (a.demand_min) spec.demand_min = *a.demand_min;
    if (a.demand_max) spec.demand_max = *a.demand_max;
    if (a.supply_min) spec.supply_min = *a.supply_min;
    if (a.supply_max) spec.supply_max = *a.supply_max;
    if (a.k_min) spec.k_min = *a.k_min;
    if (a.k_max) spec.k_max = *a.k_max;
    if (a.parts) spec.parts = *a.parts;
    if (a.limit_min) spec.limit_min = *a.limit_min;
    if (a.limit_max) spec.limit_max = *a.limit_max;
    if (a.slots) spec.slots = *a.slots;
    if (a.density) spec.density = *a.density;
    // explicit kind: default set sizes track n unless given
    if (spec.kind == FamilyKind::Explicit && !a.set_size_max && a.spec_path.empty())
        spec.set_size_max = spec.n;
    const Instance inst = generate(spec);
    emit_to(a.out_path, emit_instance_json(inst));
    return kExitOk;
}

struct SolveArgs {
    std::string instance_path;
    std::string out_path;
    std::string trace_out;
    std::string trace_level = "summary";
    std::string init_path;
    std::optional<double> epsilon, beta;
    std::optional<std::int64_t> max_iterations;
};

int run_solve(const SolveArgs& a) {
    const Instance inst = parse_instance_json(read_text_file(a.instance_path));
    SolverConfig config;
    config.epsilon = a.epsilon;
    config.beta = a.beta;
    config.max_iterations = a.max_iterations;
    config.trace_level = parse_trace_level(a.trace_level);
    if (!a.init_path.empty())
        config.init = parse_solution_json(read_text_file(a.init_path)).solution;

    const SolveResult result = solve(inst, config);

    SolutionFileData data;
    data.solution = result.solution;
    const CoverageProfile prof = coverage_values(inst, result.solution);
    data.phi = log_welfare(prof);
    data.nsw_value = nsw(prof);
    emit_to(a.out_path, emit_solution_json(data));
    if (!a.trace_out.empty()) write_text_file_atomic(a.trace_out, emit_trace_json(result.trace));
    if (result.trace.terminal == Terminal::iteration_guard_hit) {
        std::cerr << "warning: iteration guard hit after " << result.trace.total_updates
                  << " updates; solution is feasible but search was cut short\n";
        return kExitGuard;
    }
    return kExitOk;
}

struct ExactArgs {
    std::string instance_path;
    std::string out_path;
    std::uint64_t limit = 1'000'000;
    bool unsmoothed = false;
};

int run_exact(const ExactArgs& a) {
    const Instance inst = parse_instance_json(read_text_file(a.instance_path));
    SolutionFileData data;
    if (a.unsmoothed) {
        const UnsmoothedExactResult res = brute_force_unsmoothed_opt(inst, a.limit);
        data.solution = res.solution;
        data.nsw_c = res.nsw_c;
    } else {
        const ExactResult res = brute_force_opt(inst, a.limit);
        data.solution = res.solution;
    }
    const CoverageProfile prof = coverage_values(inst, data.solution);
    data.phi = log_welfare(prof);
    data.nsw_value = nsw(prof);
    emit_to(a.out_path, emit_solution_json(data));
    return kExitOk;
}

struct VerifyArgs {
    std::string instance_path;
    std::string solution_path;
    std::string exact_path;
};

int run_verify(const VerifyArgs& a) {
    const Instance inst = parse_instance_json(read_text_file(a.instance_path));
    const SolutionFileData sol = parse_solution_json(read_text_file(a.solution_path));

    bool pass = true;
    const FeasibilityVerdict feas = validate_solution(inst, sol.solution);
    for (std::size_t t = 0; t < feas.round_ok.size(); ++t) {
        if (!feas.round_ok[t]) {
            std::cout << "round " << t << ": set is not in its family\n";
            pass = false;
        }
    }
    if (pass) std::cout << "feasible: yes\n";

    const CoverageProfile prof = coverage_values(inst, sol.solution);
    const double phi = log_welfare(prof);
    const double value = nsw(prof);
    if (std::fabs(phi - sol.phi) > 1e-9) {
        std::cout << "phi mismatch: file " << sol.phi << " recomputed " << phi << "\n";
        pass = false;
    }
    if (std::fabs(value - sol.nsw_value) > 1e-9) {
        std::cout << "nsw mismatch: file " << sol.nsw_value << " recomputed " << value << "\n";
        pass = false;
    }
    if (sol.nsw_c) {
        double lg = 0;
        bool zero = false;
        for (int v : prof.values) {
            if (v == 1) { zero = true; break; }
            lg += std::log(static_cast<double>(v - 1));
        }
        const double nsw_c = zero ? 0.0 : std::exp(lg / static_cast<double>(inst.n));
        if (std::fabs(nsw_c - *sol.nsw_c) > 1e-9) {
            std::cout << "nsw_c mismatch: file " << *sol.nsw_c << " recomputed " << nsw_c << "\n";
            pass = false;
        }
    }

    if (!a.exact_path.empty()) {
        const SolutionFileData best = parse_solution_json(read_text_file(a.exact_path));
        if (!validate_solution(inst, best.solution).feasible) {
            std::cout << "reference solution is itself infeasible\n";
            pass = false;
        } else {
            const CoverageProfile best_prof = coverage_values(inst, best.solution);
            const double best_value = nsw(best_prof);
            const int n = inst.n;
            const int T = inst.rounds();
            const double denom = 18.0 + 1.0 / (2.0 * n * T);
            const double ratio = value / best_value;
            const bool ratio_ok = ratio >= 1.0 / denom - 1e-12;
            std::cout << "ratio: " << ratio << " vs bound " << 1.0 / denom
                      << (ratio_ok ? " : pass" : " : FAIL") << "\n";
            if (!ratio_ok) pass = false;
            const double eps = 1.0 / (16.0 * n * T);
            for (int alpha = 4; alpha <= T + 1; ++alpha) {
                const SuboptimalReport rep = suboptimal_agents(prof, best_prof, alpha, eps);
                const bool ok = static_cast<double>(rep.members.size()) <= rep.bound;
                std::cout << "lagging-agents alpha=" << alpha << ": " << rep.members.size()
                          << " <= " << rep.bound << (ok ? " : pass" : " : FAIL") << "\n";
                if (!ok) pass = false;
            }
        }
    }

    std::cout << "verdict: " << (pass ? "pass" : "fail") << "\n";
    return pass ? kExitOk : kExitVerifyFailed;
}

struct ReduceArgs {
    std::string kind;
    std::string input_path;
    std::string out_path;
};

int run_reduce(const ReduceArgs& a) {
    const std::string text = read_text_file(a.input_path);
    Instance inst;
    if (a.kind == "max_coverage")
        inst = from_max_k_coverage(parse_max_coverage_json(text));
    else if (a.kind == "public_decisions")
        inst = from_public_decisions(parse_public_decisions_json(text));
    else if (a.kind == "goods_allocation")
        inst = from_goods_allocation(parse_goods_json(text));
    else if (a.kind == "vertex_cover")
        inst = from_vertex_cover(parse_vertex_cover_json(text));
    else
        throw invalid_input_error("reduce: unknown kind '" + a.kind + "'");
    emit_to(a.out_path, emit_instance_json(inst));
    return kExitOk;
}

struct BenchArgs {
    std::string suite_path;
    std::string json_out;
    std::string csv_out;
    std::optional<std::uint64_t> seed;
    std::optional<int> count;
    std::optional<bool> exact;
};

int worker_count(std::size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("NASHCOVER_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || parsed < 1)
            throw invalid_input_error("NASHCOVER_THREADS must be a positive integer");
        hw = static_cast<unsigned>(parsed);
    }
    return static_cast<int>(std::min<std::size_t>(hw, std::max<std::size_t>(jobs, 1)));
}

int run_bench(const BenchArgs& a) {
    SuiteSpec suite;
    if (!a.suite_path.empty()) suite = parse_suitespec_json(read_text_file(a.suite_path));
    if (a.seed) suite.seed = *a.seed;
    if (a.count) suite.count = *a.count;
    if (a.exact) suite.exact = *a.exact;
    validate_suitespec(suite);

    const std::vector<SuiteEntry> entries = build_suite(suite);
    std::vector<BenchRow> rows(entries.size());

    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= entries.size()) return;
            const SuiteEntry& entry = entries[i];
            BenchRow& row = rows[i];
            row.id = entry.id;
            row.n = entry.instance.n;
            row.T = entry.instance.rounds();
            row.kind = family_kind_name(entry.spec.kind);
            const auto start = std::chrono::steady_clock::now();
            try {
                SolverConfig config;
                config.trace_level = TraceLevel::none;
                const SolveResult result = solve(entry.instance, config);
                const CoverageProfile prof = coverage_values(entry.instance, result.solution);
                row.nsw_alg = nsw(prof);
                row.iterations = result.trace.total_updates;
                row.bound = iteration_bound(entry.instance.n, entry.instance.rounds(),
                                            result.trace.epsilon);
                if (suite.exact) {
                    const ExactResult best = brute_force_opt(entry.instance, suite.enum_limit);
                    row.nsw_opt = best.nsw;
                    row.ratio = *row.nsw_alg / best.nsw;
                }
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            const auto stop = std::chrono::steady_clock::now();
            row.wallclock_ms =
                std::chrono::duration<double, std::milli>(stop - start).count();
        }
    };

    const int workers = worker_count(entries.size());
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();

    BenchReport report;
    report.rows = std::move(rows);
    std::vector<double> ratios;
    for (const BenchRow& row : report.rows) {
        if (!row.error.empty()) ++report.errors;
        if (row.ratio) ratios.push_back(*row.ratio);
    }
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        report.min_ratio = ratios.front();
        const std::size_t m = ratios.size();
        report.median_ratio = (m % 2 == 1) ? ratios[m / 2]
                                           : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
    }

    if (!a.json_out.empty()) write_text_file_atomic(a.json_out, emit_report_json(report));
    if (!a.csv_out.empty()) write_text_file_atomic(a.csv_out, emit_report_csv(report));
    std::cout << "instances: " << report.rows.size() << "\nerrors: " << report.errors << "\n";
    if (report.min_ratio)
        std::cout << "min ratio: " << *report.min_ratio
                  << "\nmedian ratio: " << *report.median_ratio << "\n";
    return kExitOk;
}

int run_selfcheck_cmd() {
    const SelfCheckResult res = nashcover::run_selfcheck();
    auto line = [](const char* name, bool ok) {
        std::cout << name << ": " << (ok ? "pass" : "FAIL") << "\n";
    };
    line("threshold inequality", res.threshold_inequality);
    line("tail product", res.tail_product);
    line("gap bound decreasing", res.bound_decreasing);
    line("gap bound at 1/e", res.bound_at_1_over_e);
    std::cout << "tail product at l=64: " << res.tail_product_at_64 << "\n";
    std::cout << "gap bound at 1/e: " << res.bound_value_at_1_over_e << "\n";
    return res.all() ? kExitOk : kExitSelfCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fair coverage solver suite"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate an instance from a seed");
    gen->add_option("--spec", gen_args.spec_path, "generator spec JSON");
    gen->add_option("--seed", gen_args.seed, "seed override");
    gen->add_option("--n", gen_args.n, "agent count");
    gen->add_option("--T", gen_args.T, "round count");
    gen->add_option("--kind", gen_args.kind,
                    "family kind: explicit|knapsack|cardinality|partition|matching");
    gen->add_option("--sets-per-round", gen_args.sets_per_round, "explicit: sets per round");
    gen->add_option("--set-size-min", gen_args.set_size_min, "explicit: min set size");
    gen->add_option("--set-size-max", gen_args.set_size_max, "explicit: max set size");
    gen->add_option("--demand-min", gen_args.demand_min, "knapsack: min demand");
    gen->add_option("--demand-max", gen_args.demand_max, "knapsack: max demand");
    gen->add_option("--supply-min", gen_args.supply_min, "knapsack: min per-round supply");
    gen->add_option("--supply-max", gen_args.supply_max, "knapsack: max per-round supply");
    gen->add_option("--k-min", gen_args.k_min, "cardinality: min k");
    gen->add_option("--k-max", gen_args.k_max, "cardinality: max k");
    gen->add_option("--parts", gen_args.parts, "partition: part count");
    gen->add_option("--limit-min", gen_args.limit_min, "partition: min per-part limit");
    gen->add_option("--limit-max", gen_args.limit_max, "partition: max per-part limit");
    gen->add_option("--slots", gen_args.slots, "matching: slot count");
    gen->add_option("--density", gen_args.density, "matching: preference density");
    gen->add_option("--out", gen_args.out_path, "output instance path (default stdout)");

    SolveArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand("solve", "run the local-search solver");
    solve_cmd->add_option("instance", solve_args.instance_path, "instance JSON")->required();
    solve_cmd->add_option("--epsilon", solve_args.epsilon, "threshold parameter override");
    solve_cmd->add_option("--beta", solve_args.beta, "oracle accuracy override");
    solve_cmd->add_option("--max-iterations", solve_args.max_iterations, "iteration guard");
    solve_cmd->add_option("--init", solve_args.init_path, "initial solution JSON");
    solve_cmd->add_option("--trace", solve_args.trace_level, "trace level: none|summary|full");
    solve_cmd->add_option("--trace-out", solve_args.trace_out, "trace output path");
    solve_cmd->add_option("--out", solve_args.out_path, "solution output path (default stdout)");

    ExactArgs exact_args;
    CLI::App* exact_cmd = app.add_subcommand("exact", "brute-force the optimum");
    exact_cmd->add_option("instance", exact_args.instance_path, "instance JSON")->required();
    exact_cmd->add_option("--limit", exact_args.limit, "max product-space points");
    exact_cmd->add_flag("--unsmoothed", exact_args.unsmoothed,
                        "maximize the unsmoothed objective");
    exact_cmd->add_option("--out", exact_args.out_path, "solution output path (default stdout)");

    VerifyArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check a solution file");
    verify_cmd->add_option("--instance", verify_args.instance_path, "instance JSON")->required();
    verify_cmd->add_option("--solution", verify_args.solution_path, "solution JSON")->required();
    verify_cmd->add_option("--exact", verify_args.exact_path,
                           "reference optimum JSON (enables ratio checks)");

    ReduceArgs reduce_args;
    CLI::App* reduce_cmd = app.add_subcommand("reduce", "build an instance from a reduction");
    reduce_cmd
        ->add_option("--kind", reduce_args.kind,
                     "max_coverage|public_decisions|goods_allocation|vertex_cover")
        ->required();
    reduce_cmd->add_option("input", reduce_args.input_path, "reduction input JSON")->required();
    reduce_cmd->add_option("--out", reduce_args.out_path, "output instance path (default stdout)");

    BenchArgs bench_args;
    CLI::App* bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
    bench_cmd->add_option("--suite", bench_args.suite_path, "suite spec JSON");
    bench_cmd->add_option("--seed", bench_args.seed, "suite seed override");
    bench_cmd->add_option("--count", bench_args.count, "instance count override");
    bench_cmd->add_option("--exact", bench_args.exact, "also brute-force each instance");
    bench_cmd->add_option("--json", bench_args.json_out, "report JSON path");
    bench_cmd->add_option("--csv", bench_args.csv_out, "report CSV path");

    CLI::App* selfcheck_cmd = app.add_subcommand("selfcheck", "run numeric self-checks");
    (void)selfcheck_cmd;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (solve_cmd->parsed()) return run_solve(solve_args);
        if (exact_cmd->parsed()) return run_exact(exact_args);
        if (verify_cmd->parsed()) return run_verify(verify_args);
        if (reduce_cmd->parsed()) return run_reduce(reduce_args);
        if (bench_cmd->parsed()) return run_bench(bench_args);
        if (selfcheck_cmd->parsed()) return run_selfcheck_cmd();
    } catch (const enumeration_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTooLarge;
    } catch (const guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const invalid_input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const unsatisfiable_family_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitGuard;
    }
    return kExitInvalidInput;
}
