#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nashcover/common.hpp"
#include "nashcover/core.hpp"
#include "nashcover/families.hpp"
#include "nashcover/instance.hpp"

namespace nashcover {

// Marginal log-welfare gain per agent for swapping round t: agents already
// in the round's set are weighted by what they lose if dropped, agents
// outside by what they gain if added.
inline WeightVector compute_weights(const CoverageProfile& profile,
                                    const AgentSet& current, int round) {
    WeightVector wv;
    wv.round = round;
    const int n = profile.agents();
    check_agent_range(current, n, "compute_weights");
    wv.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double v = profile.values[static_cast<std::size_t>(i)];
        if (set_contains(current, i)) {
            if (v < 2)
                throw guard_error("compute_weights: selected agent has coverage below 2");
            wv.weights[static_cast<std::size_t>(i)] = std::log(v) - std::log(v - 1);
        } else {
            wv.weights[static_cast<std::size_t>(i)] = std::log(v + 1) - std::log(v);
        }
    }
    return wv;
}

// Exact change in phi when round t's set is replaced by x.
inline double phi_delta(const Instance& inst, const Solution& sol, int t, AgentSet x) {
    const double before = log_welfare(coverage_values(inst, sol));
    const double after = log_welfare(coverage_values(inst, replace(sol, t, std::move(x))));
    return after - before;
}

// Upper bound on accepted updates: total phi headroom n*ln(T+1) divided by
// the acceptance threshold eps*n/(8T); n cancels.
inline std::int64_t iteration_bound(int n, int T, double epsilon) {
    if (n < 1 || T < 1) throw invalid_input_error("iteration_bound: n, T must be >= 1");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw invalid_input_error("iteration_bound: epsilon must lie in (0,1)");
    return static_cast<std::int64_t>(std::ceil(8.0 * static_cast<double>(T) *
                                               std::log(static_cast<double>(T) + 1.0) /
                                               epsilon));
}

enum class TraceLevel { none, summary, full };

struct SolverConfig {
    std::optional<double> epsilon;             // default 1/(16*n*T)
    std::optional<double> beta;                // default 1/(64*n*T^2)
    std::optional<std::int64_t> max_iterations;  // default iteration_bound + 1
    std::optional<Solution> init;              // default: some_member per round
    TraceLevel trace_level = TraceLevel::summary;
};

struct CandidateRecord {
    int t = 0;
    AgentSet set;
    double weight = 0;
    double delta_phi = 0;
};

struct IterationRecord {
    std::int64_t iter = 0;  // 1-based
    int tau = 0;
    double delta_phi = 0;
    double phi_before = 0;
    double phi_after = 0;
    AgentSet chosen_set;
    std::uint64_t weights_digest = 0;
    std::vector<CandidateRecord> candidates;  // full trace only
};

enum class Terminal { converged, iteration_guard_hit };

struct SolveTrace {
    double epsilon = 0;
    double beta = 0;
    std::int64_t max_iterations = 0;
    bool epsilon_overridden = false;
    bool beta_overridden = false;
    bool init_given = false;
    TraceLevel level = TraceLevel::summary;
    Solution initial;
    std::vector<IterationRecord> iterations;
    std::int64_t total_updates = 0;
    Terminal terminal = Terminal::converged;
};

struct SolveResult {
    Solution solution;
    SolveTrace trace;
};

namespace detail {

inline std::uint64_t fnv1a_mix(std::uint64_t h, std::uint64_t bits) {
    for (int b = 0; b < 8; ++b) {
        h ^= (bits >> (8 * b)) & 0xffULL;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t digest_weights(const std::vector<WeightVector>& per_round) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const WeightVector& wv : per_round)
        for (double w : wv.weights) h = fnv1a_mix(h, std::bit_cast<std::uint64_t>(w));
    return h;
}

}  // namespace detail

// Round-robin local search: each pass asks every round's oracle for a
// (1-beta)-approximate best replacement under the current marginal
// weights, applies the single best replacement if its phi gain clears
// eps*n/(8T), and stops otherwise.
inline SolveResult solve(const Instance& inst, const SolverConfig& config = {}) {
    validate_instance(inst);
    const int n = inst.n;
    const int T = inst.rounds();

    SolveTrace trace;
    trace.level = config.trace_level;
    trace.epsilon_overridden = config.epsilon.has_value();
    trace.beta_overridden = config.beta.has_value();
    trace.init_given = config.init.has_value();
    trace.epsilon = config.epsilon.value_or(1.0 / (16.0 * n * T));
    trace.beta = config.beta.value_or(1.0 / (64.0 * n * static_cast<double>(T) * T));
    if (!(trace.epsilon > 0.0) || !(trace.epsilon < 1.0))
        throw invalid_input_error("solve: epsilon must lie in (0,1)");
    if (!(trace.beta > 0.0) || !(trace.beta < 1.0))
        throw invalid_input_error("solve: beta must lie in (0,1)");
    trace.max_iterations =
        config.max_iterations.value_or(iteration_bound(n, T, trace.epsilon) + 1);

    Solution current;
    if (config.init) {
        current = *config.init;
        if (!validate_solution(inst, current).feasible)
            throw invalid_input_error("solve: initial solution is not feasible");
    } else {
        current.sets.reserve(static_cast<std::size_t>(T));
        for (const ConstraintFamily& fam : inst.families)
            current.sets.push_back(some_member(fam));
    }
    trace.initial = current;

    const double threshold = trace.epsilon * n / (8.0 * T);
    std::vector<WeightVector> round_weights(static_cast<std::size_t>(T));

    for (;;) {
        const CoverageProfile profile = coverage_values(inst, current);
        const double phi = log_welfare(profile);

        int best_t = -1;
        double best_delta = 0;
        AgentSet best_set;
        std::vector<CandidateRecord> candidates;
        for (int t = 0; t < T; ++t) {
            round_weights[static_cast<std::size_t>(t)] =
                compute_weights(profile, current.sets[static_cast<std::size_t>(t)], t);
            OracleResult res = approx_max_weight(inst.families[static_cast<std::size_t>(t)],
                                                 round_weights[static_cast<std::size_t>(t)],
                                                 trace.beta);
            const double delta = phi_delta(inst, current, t, res.subset);
            if (trace.level == TraceLevel::full)
                candidates.push_back({t, res.subset, res.weight, delta});
            if (best_t < 0 || delta > best_delta) {
                best_t = t;
                best_delta = delta;
                best_set = res.subset;
            }
        }

        if (!(best_delta >= threshold - 1e-12)) {
            trace.terminal = Terminal::converged;
            break;
        }
        if (trace.total_updates + 1 > trace.max_iterations) {
            // An improving move exists but the budget is spent: stop and say
            // so in the trace instead of throwing, so the partial run stays
            // inspectable.
            trace.terminal = Terminal::iteration_guard_hit;
            break;
        }
        ++trace.total_updates;
        current = replace(std::move(current), best_t, best_set);
        if (trace.level != TraceLevel::none) {
            IterationRecord rec;
            rec.iter = trace.total_updates;
            rec.tau = best_t;
            rec.delta_phi = best_delta;
            rec.phi_before = phi;
            rec.phi_after = log_welfare(coverage_values(inst, current));
            rec.chosen_set = best_set;
            rec.weights_digest = detail::digest_weights(round_weights);
            rec.candidates = std::move(candidates);
            trace.iterations.push_back(std::move(rec));
        }
    }

    return {std::move(current), std::move(trace)};
}

}  // namespace nashcover
