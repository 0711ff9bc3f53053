#pragma once

#include <string>
#include <vector>

#include "nashcover/common.hpp"
#include "nashcover/core.hpp"
#include "nashcover/families.hpp"

namespace nashcover {

// A coverage problem: n agents, one constraint family per round.
struct Instance {
    int n = 0;
    std::vector<ConstraintFamily> families;

    int rounds() const { return static_cast<int>(families.size()); }
};

inline void validate_instance(const Instance& inst) {
    if (inst.n < 1) throw invalid_input_error("instance: n must be >= 1");
    if (inst.families.empty()) throw invalid_input_error("instance: needs at least one round");
    for (int t = 0; t < inst.rounds(); ++t) {
        const ConstraintFamily& fam = inst.families[static_cast<std::size_t>(t)];
        const std::string where = "instance round " + std::to_string(t);
        switch (fam.kind()) {
            case FamilyKind::Explicit:
                for (const AgentSet& s : std::get<ExplicitFamily>(fam.payload).sets)
                    check_agent_range(s, inst.n, where.c_str());
                break;
            case FamilyKind::Knapsack:
                if (static_cast<int>(std::get<KnapsackFamily>(fam.payload).demands.size()) != inst.n)
                    throw invalid_input_error(where + ": demand count != n");
                break;
            case FamilyKind::Cardinality: {
                int k = std::get<CardinalityFamily>(fam.payload).k;
                if (k > inst.n)
                    throw invalid_input_error(where + ": k exceeds n");
                break;
            }
            case FamilyKind::Partition:
                for (const AgentSet& p : std::get<PartitionFamily>(fam.payload).parts)
                    check_agent_range(p, inst.n, where.c_str());
                break;
            case FamilyKind::Matching:
                if (static_cast<int>(std::get<MatchingFamily>(fam.payload).prefs.size()) != inst.n)
                    throw invalid_input_error(where + ": preference count != n");
                break;
        }
    }
}

struct FeasibilityVerdict {
    bool feasible = true;
    std::vector<char> round_ok;  // per-round membership
};

// Checks shape and per-round membership; throws on malformed input
// (wrong round count, non-canonical sets, out-of-range agents), reports
// per round whether F_t belongs to its family.
inline FeasibilityVerdict validate_solution(const Instance& inst, const Solution& sol) {
    if (sol.rounds() != inst.rounds())
        throw invalid_input_error("solution: round count != instance rounds");
    FeasibilityVerdict verdict;
    verdict.round_ok.reserve(sol.sets.size());
    for (int t = 0; t < sol.rounds(); ++t) {
        const AgentSet& s = sol.sets[static_cast<std::size_t>(t)];
        if (!is_canonical(s))
            throw invalid_input_error("solution: subset for round " + std::to_string(t) +
                                      " is not canonical");
        check_agent_range(s, inst.n, "solution");
        const bool ok = contains(inst.families[static_cast<std::size_t>(t)], s);
        verdict.round_ok.push_back(ok ? 1 : 0);
        if (!ok) verdict.feasible = false;
    }
    return verdict;
}

inline CoverageProfile coverage_values(const Instance& inst, const Solution& sol) {
    if (sol.rounds() != inst.rounds())
        throw invalid_input_error("coverage_values: round count != instance rounds");
    return coverage_values(inst.n, sol.sets);
}

}  // namespace nashcover
