#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "nashcover/common.hpp"

namespace nashcover {

// One selected agent subset per round.
struct Solution {
    std::vector<AgentSet> sets;

    int rounds() const { return static_cast<int>(sets.size()); }
};

// Smoothed coverage counts: values[i] = |{t : i in F_t}| + 1, so every
// entry is at least 1 and the geometric mean is always well defined.
struct CoverageProfile {
    std::vector<int> values;

    int agents() const { return static_cast<int>(values.size()); }
};

// Per-round marginal gains used by the improvement oracles.
struct WeightVector {
    int round = 0;
    std::vector<double> weights;
};

struct SuboptimalReport {
    int alpha = 0;
    AgentSet members;   // agents whose value lags the target profile
    double bound = 0;   // n / alpha
};

inline CoverageProfile coverage_values(int n, const std::vector<AgentSet>& sets) {
    if (n < 1) throw invalid_input_error("coverage_values: n must be >= 1");
    CoverageProfile p;
    p.values.assign(static_cast<std::size_t>(n), 1);
    for (const AgentSet& s : sets) {
        if (!is_canonical(s))
            throw invalid_input_error("coverage_values: subset is not canonical");
        check_agent_range(s, n, "coverage_values");
        for (int a : s) ++p.values[static_cast<std::size_t>(a)];
    }
    return p;
}

inline CoverageProfile coverage_values(int n, const Solution& sol) {
    return coverage_values(n, sol.sets);
}

// phi = sum_i ln v_i; n * ln(NSW).
inline double log_welfare(const CoverageProfile& p) {
    if (p.values.empty()) throw invalid_input_error("log_welfare: empty profile");
    double phi = 0;
    for (int v : p.values) {
        if (v < 1) throw invalid_input_error("log_welfare: coverage value below 1");
        phi += std::log(static_cast<double>(v));
    }
    return phi;
}

inline double nsw(const CoverageProfile& p) {
    return std::exp(log_welfare(p) / static_cast<double>(p.values.size()));
}

inline Solution replace(Solution sol, int t, AgentSet x) {
    if (t < 0 || t >= sol.rounds())
        throw invalid_input_error("replace: round index " + std::to_string(t) +
                                  " outside [0," + std::to_string(sol.rounds()) + ")");
    sol.sets[static_cast<std::size_t>(t)] = canonical(std::move(x));
    return sol;
}

// Agents whose smoothed value falls below target/(alpha*(2.25+epsilon)),
// strict inequality.  bound = n/alpha is the cardinality cap guaranteed
// for converged runs when alpha >= 4.
inline SuboptimalReport suboptimal_agents(const CoverageProfile& profile,
                                          const CoverageProfile& target,
                                          int alpha, double epsilon) {
    if (profile.values.size() != target.values.size())
        throw invalid_input_error("suboptimal_agents: profile size mismatch");
    if (alpha < 1) throw invalid_input_error("suboptimal_agents: alpha must be >= 1");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw invalid_input_error("suboptimal_agents: epsilon must lie in (0,1)");
    SuboptimalReport rep;
    rep.alpha = alpha;
    const double divisor = static_cast<double>(alpha) * (2.25 + epsilon);
    const int n = profile.agents();
    for (int i = 0; i < n; ++i) {
        const double mine = profile.values[static_cast<std::size_t>(i)];
        const double best = target.values[static_cast<std::size_t>(i)];
        if (mine < best / divisor) rep.members.push_back(i);
    }
    rep.bound = static_cast<double>(n) / static_cast<double>(alpha);
    return rep;
}

}  // namespace nashcover
