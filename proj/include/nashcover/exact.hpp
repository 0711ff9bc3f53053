#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "nashcover/common.hpp"
#include "nashcover/core.hpp"
#include "nashcover/families.hpp"
#include "nashcover/instance.hpp"

namespace nashcover {

struct ExactResult {
    Solution solution;
    double nsw = 0;
    CoverageProfile profile;
    std::uint64_t explored = 0;
};

struct UnsmoothedExactResult {
    Solution solution;
    double nsw_c = 0;           // geometric mean of raw counts, 0 if anyone uncovered
    std::vector<int> counts;    // raw per-agent counts, no +1 smoothing
    std::uint64_t explored = 0;
};

namespace detail {

// Tuples are compared by exact integer product of the per-agent values
// whenever the product provably fits 128 bits; ties keep the earlier
// (lexicographically smaller) tuple.  The log-sum fallback only matters
// beyond desk scale.
inline bool product_fits_u128(int n, int T) {
    return static_cast<double>(n) * std::log2(static_cast<double>(T) + 1.0) <= 120.0;
}

template <typename Visit>
inline std::uint64_t for_each_tuple(const std::vector<std::vector<AgentSet>>& members,
                                    Visit&& visit) {
    const std::size_t T = members.size();
    std::vector<std::size_t> idx(T, 0);
    std::uint64_t explored = 0;
    for (;;) {
        ++explored;
        visit(idx);
        std::size_t t = T;
        while (t-- > 0) {
            if (++idx[t] < members[t].size()) break;
            idx[t] = 0;
            if (t == 0) return explored;
        }
    }
}

inline std::vector<std::vector<AgentSet>> all_members(const Instance& inst,
                                                      std::uint64_t limit) {
    std::vector<std::vector<AgentSet>> members;
    members.reserve(static_cast<std::size_t>(inst.rounds()));
    unsigned __int128 tuples = 1;
    for (const ConstraintFamily& fam : inst.families) {
        members.push_back(enumerate_members(fam, inst.n, limit));
        tuples *= members.back().size();
        if (tuples > limit)
            throw enumeration_limit_error("brute force: search space exceeds limit");
    }
    return members;
}

}  // namespace detail

// Exhaustive optimum over the cross product of all family member lists.
// Throws enumeration_limit_error if the tuple count exceeds `limit`.
inline ExactResult brute_force_opt(const Instance& inst, std::uint64_t limit = 1'000'000) {
    validate_instance(inst);
    const int n = inst.n;
    const int T = inst.rounds();
    const auto members = detail::all_members(inst, limit);

    const bool exact_cmp = detail::product_fits_u128(n, T);
    bool have_best = false;
    unsigned __int128 best_prod = 0;
    double best_phi = 0;
    std::vector<std::size_t> best_idx;
    std::vector<int> values(static_cast<std::size_t>(n));

    const std::uint64_t explored = detail::for_each_tuple(members, [&](const std::vector<std::size_t>& idx) {
        std::fill(values.begin(), values.end(), 1);
        for (std::size_t t = 0; t < idx.size(); ++t)
            for (int a : members[t][idx[t]]) ++values[static_cast<std::size_t>(a)];
        bool better = false;
        if (exact_cmp) {
            unsigned __int128 prod = 1;
            for (int v : values) prod *= static_cast<unsigned>(v);
            better = !have_best || prod > best_prod;
            if (better) best_prod = prod;
        } else {
            double phi = 0;
            for (int v : values) phi += std::log(static_cast<double>(v));
            better = !have_best || phi > best_phi;
            if (better) best_phi = phi;
        }
        if (better) {
            have_best = true;
            best_idx = idx;
        }
    });

    ExactResult res;
    res.explored = explored;
    res.solution.sets.reserve(static_cast<std::size_t>(T));
    for (std::size_t t = 0; t < best_idx.size(); ++t)
        res.solution.sets.push_back(members[t][best_idx[t]]);
    res.profile = coverage_values(inst, res.solution);
    res.nsw = nsw(res.profile);
    return res;
}

// Reference oracle: exhaustive max-weight member, lexicographically first
// among ties.
inline OracleResult brute_force_max_weight(const ConstraintFamily& fam,
                                           const std::vector<double>& weights,
                                           std::uint64_t limit = 1'000'000) {
    if (weights.empty())
        throw invalid_input_error("brute_force_max_weight: empty weight vector");
    const int n = static_cast<int>(weights.size());
    const std::vector<AgentSet> members = enumerate_members(fam, n, limit);
    const AgentSet* best = nullptr;
    double best_w = 0;
    for (const AgentSet& s : members) {
        double ws = detail::weight_of(s, weights);
        if (!best || ws > best_w) {
            best = &s;
            best_w = ws;
        }
    }
    return {*best, best_w, true};
}

// Same search over the unsmoothed objective: product of raw counts, which
// is 0 whenever some agent is never covered.
inline UnsmoothedExactResult brute_force_unsmoothed_opt(const Instance& inst,
                                                        std::uint64_t limit = 1'000'000) {
    validate_instance(inst);
    const int n = inst.n;
    const auto members = detail::all_members(inst, limit);

    const bool exact_cmp = detail::product_fits_u128(n, inst.rounds());
    bool have_best = false;
    unsigned __int128 best_prod = 0;
    double best_log = 0;
    bool best_zero = true;
    std::vector<std::size_t> best_idx;
    std::vector<int> counts(static_cast<std::size_t>(n));

    const std::uint64_t explored = detail::for_each_tuple(members, [&](const std::vector<std::size_t>& idx) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t t = 0; t < idx.size(); ++t)
            for (int a : members[t][idx[t]]) ++counts[static_cast<std::size_t>(a)];
        bool better = false;
        if (exact_cmp) {
            unsigned __int128 prod = 1;
            for (int c : counts) prod *= static_cast<unsigned>(c);
            better = !have_best || prod > best_prod;
            if (better) best_prod = prod;
        } else {
            bool zero = false;
            double lg = 0;
            for (int c : counts) {
                if (c == 0) { zero = true; break; }
                lg += std::log(static_cast<double>(c));
            }
            better = !have_best || (best_zero ? !zero : (!zero && lg > best_log));
            if (better) { best_zero = zero; best_log = lg; }
        }
        if (better) {
            have_best = true;
            best_idx = idx;
        }
    });

    UnsmoothedExactResult res;
    res.explored = explored;
    res.solution.sets.reserve(best_idx.size());
    for (std::size_t t = 0; t < best_idx.size(); ++t)
        res.solution.sets.push_back(members[t][best_idx[t]]);
    res.counts.assign(static_cast<std::size_t>(n), 0);
    for (const AgentSet& s : res.solution.sets)
        for (int a : s) ++res.counts[static_cast<std::size_t>(a)];
    double lg = 0;
    bool zero = false;
    for (int c : res.counts) {
        if (c == 0) { zero = true; break; }
        lg += std::log(static_cast<double>(c));
    }
    res.nsw_c = zero ? 0.0 : std::exp(lg / static_cast<double>(n));
    return res;
}

}  // namespace nashcover
