// End-to-end acceptance checks.  Each criterion prints one line; the
// process exits nonzero if any of them fail.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nashcover/nashcover.hpp"

using namespace nashcover;

namespace {

int g_failures = 0;

void report(int id, const std::string& label, bool pass, const std::string& note = "") {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << label;
    if (!note.empty()) std::cout << " (" << note << ")";
    std::cout << "\n";
    if (!pass) ++g_failures;
}

struct SuiteRun {
    SuiteEntry entry;
    SolveResult run;
    ExactResult best;
};

std::vector<SuiteRun> g_suite;
double g_suite_seconds = 0;

void build_reference_suite() {
    const auto started = std::chrono::steady_clock::now();
    SuiteSpec spec;
    spec.seed = 20240819;
    spec.count = 200;
    const std::vector<SuiteEntry> entries = build_suite(spec);
    g_suite.reserve(entries.size());
    for (const SuiteEntry& entry : entries) {
        SuiteRun run;
        run.entry = entry;
        SolverConfig config;
        config.trace_level = TraceLevel::summary;
        run.run = solve(entry.instance, config);
        run.best = brute_force_opt(entry.instance, spec.enum_limit);
        g_suite.push_back(std::move(run));
    }
    g_suite_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - started)
                          .count();
}

void criterion_ratio() {
    bool pass = !g_suite.empty();
    double min_ratio = 1e300;
    for (const SuiteRun& sr : g_suite) {
        const Instance& inst = sr.entry.instance;
        const double got = nsw(coverage_values(inst, sr.run.solution));
        const double ratio = got / sr.best.nsw;
        min_ratio = std::min(min_ratio, ratio);
        const double floor = 1.0 / (18.0 + 1.0 / (2.0 * inst.n * inst.rounds()));
        if (!(ratio >= floor - 1e-12)) pass = false;
        if (!validate_solution(inst, sr.run.solution).feasible) pass = false;
    }
    if (!(g_suite_seconds < 60.0)) pass = false;
    std::ostringstream note;
    note << g_suite.size() << " instances, min observed ratio " << min_ratio << ", "
         << g_suite_seconds << "s";
    report(1, "welfare ratio meets the guarantee on the reference suite", pass, note.str());
}

void criterion_lagging_agents() {
    bool pass = true;
    std::uint64_t checked = 0;
    for (const SuiteRun& sr : g_suite) {
        const Instance& inst = sr.entry.instance;
        const CoverageProfile mine = coverage_values(inst, sr.run.solution);
        const CoverageProfile target = coverage_values(inst, sr.best.solution);
        for (int alpha = 4; alpha <= inst.rounds() + 1; ++alpha) {
            const SuboptimalReport rep =
                suboptimal_agents(mine, target, alpha, sr.run.trace.epsilon);
            ++checked;
            if (static_cast<double>(rep.members.size()) > rep.bound + 1e-12) pass = false;
        }
    }
    report(2, "lagging-agent counts stay within n/alpha", pass,
           std::to_string(checked) + " (instance, alpha) pairs");
}

struct Probe {
    int n = 0;
    std::vector<AgentSet> sets;
    int t = 0;
    AgentSet x;
};

Probe random_probe(SplitMix64& rng) {
    Probe p;
    p.n = static_cast<int>(rng.uniform(1, 8));
    const int T = static_cast<int>(rng.uniform(1, 5));
    p.sets.resize(static_cast<std::size_t>(T));
    for (AgentSet& s : p.sets)
        for (int a = 0; a < p.n; ++a)
            if (rng.uniform01() < 0.4) s.push_back(a);
    p.t = static_cast<int>(rng.uniform(0, T - 1));
    for (int a = 0; a < p.n; ++a)
        if (rng.uniform01() < 0.4) p.x.push_back(a);
    return p;
}

double probe_delta(const Probe& p) {
    const double before = log_welfare(coverage_values(p.n, p.sets));
    std::vector<AgentSet> swapped = p.sets;
    swapped[static_cast<std::size_t>(p.t)] = p.x;
    return log_welfare(coverage_values(p.n, swapped)) - before;
}

void criterion_weight_identity() {
    SplitMix64 rng{1001};
    bool pass = true;
    double worst = 0;
    for (int probe = 0; probe < 10'000; ++probe) {
        const Probe p = random_probe(rng);
        const CoverageProfile prof = coverage_values(p.n, p.sets);
        const AgentSet& current = p.sets[static_cast<std::size_t>(p.t)];
        const WeightVector w = compute_weights(prof, current, p.t);
        double lhs = 0;
        for (int i : p.x) lhs += w.weights[static_cast<std::size_t>(i)];
        for (int j : current) lhs -= w.weights[static_cast<std::size_t>(j)];
        const double err = std::fabs(lhs - probe_delta(p));
        worst = std::max(worst, err);
        if (!(err < 1e-9)) pass = false;
    }
    std::ostringstream note;
    note << "10000 probes, worst deviation " << worst;
    report(3, "swap weights reproduce the log-welfare change exactly", pass, note.str());
}

void criterion_delta_lower_bound() {
    SplitMix64 rng{1002};
    bool pass = true;
    for (int probe = 0; probe < 10'000; ++probe) {
        const Probe p = random_probe(rng);
        const CoverageProfile prof = coverage_values(p.n, p.sets);
        const AgentSet& current = p.sets[static_cast<std::size_t>(p.t)];
        double bound = 0;
        for (int i : p.x)
            bound += 1.0 / (prof.values[static_cast<std::size_t>(i)] + 1.0);
        for (int j : current)
            bound -= 1.0 / (prof.values[static_cast<std::size_t>(j)] - 1.0);
        if (!(probe_delta(p) >= bound - 1e-9)) pass = false;
    }
    report(4, "log-welfare change dominates its reciprocal lower bound", pass,
           "10000 probes");
}

void criterion_averaging() {
    bool pass = true;
    std::uint64_t snapshots = 0;
    for (const SuiteRun& sr : g_suite) {
        const Instance& inst = sr.entry.instance;
        const int T = inst.rounds();
        const Solution& opt = sr.best.solution;
        const CoverageProfile opt_prof = coverage_values(inst, opt);

        Solution current = sr.run.trace.initial;
        std::size_t next_update = 0;
        for (;;) {
            ++snapshots;
            const CoverageProfile prof = coverage_values(inst, current);
            const double phi = log_welfare(prof);
            double avg_delta = 0;
            for (int t = 0; t < T; ++t) {
                std::vector<AgentSet> swapped = current.sets;
                swapped[static_cast<std::size_t>(t)] = opt.sets[static_cast<std::size_t>(t)];
                avg_delta += log_welfare(coverage_values(inst.n, swapped)) - phi;
            }
            avg_delta /= T;
            double rhs = 0;
            for (int i = 0; i < inst.n; ++i)
                rhs += (opt_prof.values[static_cast<std::size_t>(i)] - 1.0) /
                       (prof.values[static_cast<std::size_t>(i)] + 1.0);
            rhs = rhs / T - static_cast<double>(inst.n) / T;
            if (!(avg_delta >= rhs - 1e-9)) pass = false;

            if (next_update >= sr.run.trace.iterations.size()) break;
            const IterationRecord& rec = sr.run.trace.iterations[next_update++];
            current = replace(std::move(current), rec.tau, rec.chosen_set);
        }
    }
    report(5, "averaged swap gains dominate the coverage-deficit bound", pass,
           std::to_string(snapshots) + " snapshots");
}

void criterion_iteration_budget() {
    bool pass = true;
    for (const SuiteRun& sr : g_suite) {
        const Instance& inst = sr.entry.instance;
        const int T = inst.rounds();
        const double budget =
            std::ceil(128.0 * inst.n * T * T * std::log(static_cast<double>(T) + 1.0));
        if (static_cast<double>(sr.run.trace.total_updates) > budget) pass = false;
        if (sr.run.trace.terminal != Terminal::converged) pass = false;
        const double threshold = sr.run.trace.epsilon * inst.n / (8.0 * T);
        for (const IterationRecord& rec : sr.run.trace.iterations)
            if (!(rec.delta_phi >= threshold - 1e-12)) pass = false;
    }
    report(6, "update counts respect the termination budget", pass,
           std::to_string(g_suite.size()) + " instances");
}

AgentSet random_subset(SplitMix64& rng, int n, double density) {
    AgentSet s;
    for (int a = 0; a < n; ++a)
        if (rng.uniform01() < density) s.push_back(a);
    return s;
}

void criterion_oracle_contract() {
    SplitMix64 rng{1007};
    bool pass = true;
    const int kProbes = 1000;
    for (int kind = 0; kind < 5; ++kind) {
        for (int probe = 0; probe < kProbes; ++probe) {
            const int n = static_cast<int>(rng.uniform(2, 12));
            const int T = static_cast<int>(rng.uniform(1, 5));
            const double beta =
                1.0 / (64.0 * n * static_cast<double>(T) * static_cast<double>(T));

            ConstraintFamily fam = ConstraintFamily::make_cardinality(0);
            switch (kind) {
                case 0: {
                    std::vector<AgentSet> sets;
                    const int count = static_cast<int>(rng.uniform(1, 6));
                    for (int s = 0; s < count; ++s)
                        sets.push_back(random_subset(rng, n, 0.4));
                    fam = ConstraintFamily::make_explicit(std::move(sets));
                    break;
                }
                case 1: {
                    std::vector<std::int64_t> demands(static_cast<std::size_t>(n));
                    const std::int64_t unit =
                        (probe % 2 == 0) ? 1 : 1'000'000'000;  // exercise both tables
                    std::int64_t sum = 0, top = 0;
                    for (auto& d : demands) {
                        d = rng.uniform(1, 20) * unit;
                        sum += d;
                        top = std::max(top, d);
                    }
                    fam = ConstraintFamily::make_knapsack(std::move(demands),
                                                          rng.uniform(top, sum));
                    break;
                }
                case 2:
                    fam = ConstraintFamily::make_cardinality(
                        static_cast<int>(rng.uniform(0, n)));
                    break;
                case 3: {
                    const int parts = static_cast<int>(rng.uniform(1, 3));
                    std::vector<AgentSet> groups(static_cast<std::size_t>(parts));
                    for (int a = 0; a < n; ++a) {
                        const int j = static_cast<int>(rng.uniform(0, parts));
                        if (j < parts) groups[static_cast<std::size_t>(j)].push_back(a);
                    }
                    std::vector<int> limits(static_cast<std::size_t>(parts));
                    for (auto& c : limits) c = static_cast<int>(rng.uniform(0, 2));
                    std::vector<AgentSet> kept;
                    std::vector<int> kept_limits;
                    for (int j = 0; j < parts; ++j)
                        if (!groups[static_cast<std::size_t>(j)].empty()) {
                            kept.push_back(groups[static_cast<std::size_t>(j)]);
                            kept_limits.push_back(limits[static_cast<std::size_t>(j)]);
                        }
                    fam = ConstraintFamily::make_partition(std::move(kept),
                                                           std::move(kept_limits));
                    break;
                }
                case 4: {
                    const int slots = static_cast<int>(rng.uniform(1, 4));
                    std::vector<std::vector<int>> prefs(static_cast<std::size_t>(n));
                    for (int a = 0; a < n; ++a)
                        for (int s = 0; s < slots; ++s)
                            if (rng.uniform01() < 0.5)
                                prefs[static_cast<std::size_t>(a)].push_back(s);
                    fam = ConstraintFamily::make_matching(slots, std::move(prefs));
                    break;
                }
            }

            std::vector<double> w(static_cast<std::size_t>(n));
            for (auto& x : w)
                x = rng.uniform01() < 0.15 ? 0.0 : rng.uniform01() * 0.6931471805599453;

            const OracleResult got = approx_max_weight(fam, w, beta);
            if (!contains(fam, got.subset)) {
                pass = false;
                continue;
            }
            const OracleResult best = brute_force_max_weight(fam, w, 1u << 14);
            if (got.exact) {
                if (!(std::fabs(got.weight - best.weight) <= 1e-9)) pass = false;
            } else {
                if (!(got.weight >= (1.0 - beta) * best.weight - 1e-12)) pass = false;
            }
        }
    }
    report(7, "round oracles stay within their accuracy budget", pass,
           "5000 probes across all kinds");
}

void criterion_reduction_gap() {
    bool pass = true;

    MaxCoverageInput yes1;
    yes1.universe_size = 4;
    yes1.sets = {{0, 1}, {2, 3}, {0, 2}};
    yes1.k = 2;
    yes1.uniform_size = 2;
    MaxCoverageInput yes2;
    yes2.universe_size = 6;
    yes2.sets = {{0, 1, 2}, {3, 4, 5}, {0, 2, 4}, {1, 3, 5}};
    yes2.k = 2;
    yes2.uniform_size = 3;
    for (const MaxCoverageInput& in : {yes1, yes2}) {
        const Instance inst = from_max_k_coverage(in);
        const ExactResult best = brute_force_opt(inst);
        if (!(std::fabs(best.nsw - 2.0) <= 1e-12)) pass = false;
        const GapVerdict verdict = verify_gap(inst, std::nullopt);
        if (!verdict.pass) pass = false;
    }

    MaxCoverageInput no1;  // half the universe untouchable; optimum sqrt(3)
    no1.universe_size = 4;
    no1.sets = {{0, 1}};
    no1.k = 2;
    no1.uniform_size = 2;
    MaxCoverageInput no2;  // triangle of pairs over six elements
    no2.universe_size = 6;
    no2.sets = {{0, 1}, {1, 2}, {0, 2}};
    no2.k = 3;
    no2.uniform_size = 2;
    MaxCoverageInput no3;  // strictly inside the ceiling
    no3.universe_size = 6;
    no3.sets = {{0, 1}, {0, 2}};
    no3.k = 3;
    no3.uniform_size = 2;
    for (const MaxCoverageInput& in : {no1, no2, no3}) {
        const Instance inst = from_max_k_coverage(in);
        const GapVerdict verdict = verify_gap(inst, std::nullopt);
        if (!verdict.pass) pass = false;
        const double frac = static_cast<double>(verdict.uncovered) / inst.n;
        if (!(frac >= 1.0 / std::exp(1.0))) pass = false;  // the cap must apply
        if (!(verdict.nsw_value <= 1.83 + 1e-9)) pass = false;
    }

    report(8, "coverage reductions pin the welfare gap", pass,
           "2 coverable + 3 uncoverable constructions");
}

void criterion_dichotomy() {
    bool pass = true;
    std::uint64_t graphs = 0;
    for (int vertices = 2; vertices <= 5; ++vertices) {
        std::vector<std::pair<int, int>> all_edges;
        for (int u = 0; u < vertices; ++u)
            for (int v = u + 1; v < vertices; ++v) all_edges.emplace_back(u, v);
        const std::uint32_t top = 1u << all_edges.size();
        for (std::uint32_t mask = 1; mask < top; ++mask) {
            VertexCoverInput in;
            in.vertices = vertices;
            for (std::size_t e = 0; e < all_edges.size(); ++e)
                if ((mask >> e) & 1) in.edges.push_back(all_edges[e]);
            ++graphs;
            for (int k = 1; k <= vertices; ++k) {
                in.k = k;
                const DichotomyVerdict verdict = verify_unsmoothed_dichotomy(in);
                if (!verdict.pass) pass = false;
            }
        }
    }
    report(9, "unsmoothed optimum is one-or-zero exactly with cover existence", pass,
           std::to_string(graphs) + " graphs, every budget");
}

void criterion_selfcheck() {
    const SelfCheckResult res = run_selfcheck();
    bool pass = res.all();
    if (!(std::fabs(res.tail_product_at_64 - 0.5) < 1e-6)) pass = false;
    std::ostringstream note;
    note << "tail product at 64 = " << res.tail_product_at_64;
    report(10, "numeric self-checks hold on their pinned grids", pass, note.str());
}

void criterion_determinism() {
    // library-level: emitted artifacts are byte-stable
    Instance inst;
    inst.n = 5;
    inst.families.push_back(ConstraintFamily::make_explicit({{0, 1, 4}, {2}, {3}}));
    inst.families.push_back(ConstraintFamily::make_cardinality(2));
    SolverConfig config;
    config.trace_level = TraceLevel::full;
    const SolveResult a = solve(inst, config);
    const SolveResult b = solve(inst, config);
    SolutionFileData da, db;
    da.solution = a.solution;
    db.solution = b.solution;
    da.phi = log_welfare(coverage_values(inst, a.solution));
    db.phi = log_welfare(coverage_values(inst, b.solution));
    da.nsw_value = nsw(coverage_values(inst, a.solution));
    db.nsw_value = nsw(coverage_values(inst, b.solution));
    bool pass = emit_solution_json(da) == emit_solution_json(db) &&
                emit_trace_json(a.trace) == emit_trace_json(b.trace);
    std::string note = "library artifacts byte-identical";

    // binary-level: the shipped tool reproduces files bit for bit
    if (const char* cli = std::getenv("NASHCOVER_CLI")) {
        namespace fs = std::filesystem;
        const fs::path dir =
            fs::temp_directory_path() / ("nashcover_acceptance_" + std::to_string(getpid()));
        fs::create_directories(dir);
        const std::string base = std::string(cli);
        const std::string inst_path = (dir / "inst.json").string();
        auto shell = [&](const std::string& cmd) {
            return std::system(cmd.c_str()) == 0;
        };
        bool cli_ok =
            shell(base + " gen --seed 90210 --n 6 --T 3 --kind explicit --sets-per-round 4" +
                  " --set-size-max 5 --out " + inst_path);
        for (int run = 1; run <= 2 && cli_ok; ++run) {
            const std::string sol = (dir / ("sol" + std::to_string(run) + ".json")).string();
            const std::string trace = (dir / ("trace" + std::to_string(run) + ".json")).string();
            cli_ok = shell(base + " solve " + inst_path + " --trace full --out " + sol +
                           " --trace-out " + trace);
        }
        if (cli_ok) {
            cli_ok = read_text_file((dir / "sol1.json").string()) ==
                         read_text_file((dir / "sol2.json").string()) &&
                     read_text_file((dir / "trace1.json").string()) ==
                         read_text_file((dir / "trace2.json").string());
        }
        if (!cli_ok) pass = false;
        note = cli_ok ? "library and CLI artifacts byte-identical"
                      : "CLI reruns diverged or failed";
        fs::remove_all(dir);
    }
    report(11, "identical runs write identical files", pass, note);
}

}  // namespace

int main() {
    try {
        build_reference_suite();
        criterion_ratio();
        criterion_lagging_agents();
        criterion_weight_identity();
        criterion_delta_lower_bound();
        criterion_averaging();
        criterion_iteration_budget();
        criterion_oracle_contract();
        criterion_reduction_gap();
        criterion_dichotomy();
        criterion_selfcheck();
        criterion_determinism();
    } catch (const std::exception& e) {
        std::cout << "[FAIL] acceptance run aborted: " << e.what() << "\n";
        return 1;
    }
    if (g_failures > 0) {
        std::cout << g_failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all 11 criteria passed\n";
    return 0;
}
