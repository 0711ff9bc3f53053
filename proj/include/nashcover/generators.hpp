#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nashcover/common.hpp"
#include "nashcover/families.hpp"
#include "nashcover/instance.hpp"

namespace nashcover {

// splitmix64 (Steele/Lea/Flood mixing constants).  Chosen because the
// algorithm fits in six lines, which makes generated instances
// reproducible from any language; the generator identity is part of the
// file-format contract.  Integer draws use modulo reduction: the bias is
// negligible at the ranges used here and the results are portable.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // inclusive on both ends
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw invalid_input_error("uniform: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct GenSpec {
    std::uint64_t seed = 0;
    int n = 0;
    int T = 0;
    FamilyKind kind = FamilyKind::Explicit;

    // explicit
    int sets_per_round = 3;
    int set_size_min = 1;
    int set_size_max = 1;
    // knapsack (load-shedding scenario: per-agent demand, per-round supply)
    std::int64_t demand_min = 1;
    std::int64_t demand_max = 10;
    std::optional<std::int64_t> supply_min;  // default: max demand
    std::optional<std::int64_t> supply_max;  // default: sum of demands
    // cardinality
    int k_min = 0;
    int k_max = 0;
    // partition
    int parts = 1;
    int limit_min = 0;
    int limit_max = 1;
    // matching
    int slots = 1;
    double density = 0.5;
};

inline void validate_genspec(const GenSpec& spec) {
    if (spec.n < 1) throw invalid_input_error("genspec: n must be >= 1");
    if (spec.T < 1) throw invalid_input_error("genspec: T must be >= 1");
    switch (spec.kind) {
        case FamilyKind::Explicit:
            if (spec.sets_per_round < 1)
                throw invalid_input_error("genspec: sets_per_round must be >= 1");
            if (spec.set_size_min < 1 || spec.set_size_min > spec.set_size_max ||
                spec.set_size_max > spec.n)
                throw invalid_input_error("genspec: set sizes must satisfy 1 <= min <= max <= n");
            break;
        case FamilyKind::Knapsack:
            if (spec.demand_min < 0 || spec.demand_min > spec.demand_max)
                throw invalid_input_error("genspec: demand range must satisfy 0 <= min <= max");
            if (spec.supply_min && spec.supply_max && *spec.supply_min > *spec.supply_max)
                throw invalid_input_error("genspec: supply range is empty");
            break;
        case FamilyKind::Cardinality:
            if (spec.k_min < 0 || spec.k_min > spec.k_max || spec.k_max > spec.n)
                throw invalid_input_error("genspec: k range must satisfy 0 <= min <= max <= n");
            break;
        case FamilyKind::Partition:
            if (spec.parts < 1) throw invalid_input_error("genspec: parts must be >= 1");
            if (spec.limit_min < 0 || spec.limit_min > spec.limit_max)
                throw invalid_input_error("genspec: limit range must satisfy 0 <= min <= max");
            break;
        case FamilyKind::Matching:
            if (spec.slots < 1) throw invalid_input_error("genspec: slots must be >= 1");
            if (!(spec.density >= 0.0) || !(spec.density <= 1.0))
                throw invalid_input_error("genspec: density must lie in [0,1]");
            break;
    }
}

namespace detail {

// First `size` entries of a seeded shuffle of 0..n-1.
inline AgentSet sample_agents(SplitMix64& rng, int n, int size) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < size; ++i) {
        int j = static_cast<int>(rng.uniform(i, n - 1));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    idx.resize(static_cast<std::size_t>(size));
    return canonical(std::move(idx));
}

}  // namespace detail

// Deterministic in spec.seed.  Draw order per round, fixed forever:
// explicit — per set, one size then a partial shuffle; knapsack — n
// demands then one capacity; cardinality — one k; partition — one part
// assignment per agent (parts = unassigned) then one limit per part
// slot; matching — one uniform01 per (agent, slot) pair, row-major.
inline Instance generate(const GenSpec& spec) {
    validate_genspec(spec);
    SplitMix64 rng(spec.seed);
    Instance inst;
    inst.n = spec.n;
    inst.families.reserve(static_cast<std::size_t>(spec.T));
    for (int t = 0; t < spec.T; ++t) {
        switch (spec.kind) {
            case FamilyKind::Explicit: {
                std::vector<AgentSet> sets;
                sets.reserve(static_cast<std::size_t>(spec.sets_per_round));
                for (int s = 0; s < spec.sets_per_round; ++s) {
                    int size = static_cast<int>(rng.uniform(spec.set_size_min, spec.set_size_max));
                    sets.push_back(detail::sample_agents(rng, spec.n, size));
                }
                inst.families.push_back(ConstraintFamily::make_explicit(std::move(sets)));
                break;
            }
            case FamilyKind::Knapsack: {
                std::vector<std::int64_t> demands(static_cast<std::size_t>(spec.n));
                std::int64_t top = 0, low = spec.demand_max, sum = 0;
                for (int i = 0; i < spec.n; ++i) {
                    demands[static_cast<std::size_t>(i)] =
                        rng.uniform(spec.demand_min, spec.demand_max);
                    top = std::max(top, demands[static_cast<std::size_t>(i)]);
                    low = std::min(low, demands[static_cast<std::size_t>(i)]);
                    sum += demands[static_cast<std::size_t>(i)];
                }
                std::int64_t lo = spec.supply_min.value_or(top);
                std::int64_t hi = spec.supply_max.value_or(std::max(sum, lo));
                if (lo > hi) lo = hi;
                // keep at least one agent servable
                std::int64_t capacity = std::max(rng.uniform(lo, hi), low);
                inst.families.push_back(
                    ConstraintFamily::make_knapsack(std::move(demands), capacity));
                break;
            }
            case FamilyKind::Cardinality: {
                int k = static_cast<int>(rng.uniform(spec.k_min, spec.k_max));
                inst.families.push_back(ConstraintFamily::make_cardinality(k));
                break;
            }
            case FamilyKind::Partition: {
                std::vector<AgentSet> parts(static_cast<std::size_t>(spec.parts));
                for (int i = 0; i < spec.n; ++i) {
                    int j = static_cast<int>(rng.uniform(0, spec.parts));
                    if (j < spec.parts) parts[static_cast<std::size_t>(j)].push_back(i);
                }
                std::vector<int> limits(static_cast<std::size_t>(spec.parts));
                for (int j = 0; j < spec.parts; ++j)
                    limits[static_cast<std::size_t>(j)] =
                        static_cast<int>(rng.uniform(spec.limit_min, spec.limit_max));
                std::vector<AgentSet> kept;
                std::vector<int> kept_limits;
                for (int j = 0; j < spec.parts; ++j) {
                    if (parts[static_cast<std::size_t>(j)].empty()) continue;
                    kept.push_back(std::move(parts[static_cast<std::size_t>(j)]));
                    kept_limits.push_back(limits[static_cast<std::size_t>(j)]);
                }
                inst.families.push_back(
                    ConstraintFamily::make_partition(std::move(kept), std::move(kept_limits)));
                break;
            }
            case FamilyKind::Matching: {
                std::vector<std::vector<int>> prefs(static_cast<std::size_t>(spec.n));
                for (int i = 0; i < spec.n; ++i)
                    for (int s = 0; s < spec.slots; ++s)
                        if (rng.uniform01() < spec.density)
                            prefs[static_cast<std::size_t>(i)].push_back(s);
                inst.families.push_back(
                    ConstraintFamily::make_matching(spec.slots, std::move(prefs)));
                break;
            }
        }
    }
    validate_instance(inst);
    return inst;
}

// Deterministic mixed-kind benchmark suite.  Slots rotate through the
// requested kinds; per-slot parameters are drawn from a sub-seed, and
// draws whose member lists exceed family_cap (or whose product space
// exceeds enum_limit) are rejected and retried with the next sub-seed so
// every emitted instance stays brute-forceable.
struct SuiteSpec {
    std::uint64_t seed = 0;
    int count = 200;
    int n_max = 8;
    int t_max = 5;
    std::uint64_t family_cap = 6;
    std::uint64_t enum_limit = 1'000'000;
    std::vector<FamilyKind> kinds = {FamilyKind::Explicit, FamilyKind::Knapsack,
                                     FamilyKind::Cardinality, FamilyKind::Partition,
                                     FamilyKind::Matching};
    bool exact = true;  // bench: also run the brute-force optimum per instance
};

inline void validate_suitespec(const SuiteSpec& spec) {
    if (spec.count < 0) throw invalid_input_error("suite: count must be >= 0");
    if (spec.n_max < 2) throw invalid_input_error("suite: n_max must be >= 2");
    if (spec.t_max < 1) throw invalid_input_error("suite: t_max must be >= 1");
    if (spec.family_cap < 1) throw invalid_input_error("suite: family_cap must be >= 1");
    if (spec.kinds.empty()) throw invalid_input_error("suite: needs at least one kind");
}

struct SuiteEntry {
    std::uint64_t id = 0;
    GenSpec spec;
    Instance instance;
};

inline std::vector<SuiteEntry> build_suite(const SuiteSpec& suite) {
    validate_suitespec(suite);
    std::vector<SuiteEntry> out;
    out.reserve(static_cast<std::size_t>(suite.count));
    for (int slot = 0; slot < suite.count; ++slot) {
        const FamilyKind kind = suite.kinds[static_cast<std::size_t>(slot) % suite.kinds.size()];
        bool accepted = false;
        for (int attempt = 0; attempt < 256 && !accepted; ++attempt) {
            SplitMix64 derive(suite.seed +
                              static_cast<std::uint64_t>(slot * 256 + attempt) *
                                  0x9e3779b97f4a7c15ULL);
            GenSpec spec;
            spec.seed = derive.next();
            spec.kind = kind;
            spec.T = static_cast<int>(derive.uniform(1, suite.t_max));
            switch (kind) {
                case FamilyKind::Explicit:
                    spec.n = static_cast<int>(derive.uniform(2, std::min(8, suite.n_max)));
                    spec.sets_per_round = static_cast<int>(derive.uniform(
                        2, static_cast<std::int64_t>(std::min<std::uint64_t>(suite.family_cap, 6))));
                    spec.set_size_min = 1;
                    spec.set_size_max = static_cast<int>(derive.uniform(1, spec.n));
                    break;
                case FamilyKind::Knapsack:
                    spec.n = static_cast<int>(derive.uniform(2, std::min(3, suite.n_max)));
                    spec.demand_min = 3;
                    spec.demand_max = 9;
                    spec.supply_min = spec.supply_max = derive.uniform(6, 12);
                    break;
                case FamilyKind::Cardinality:
                    spec.n = static_cast<int>(derive.uniform(2, std::min(5, suite.n_max)));
                    spec.k_min = spec.k_max =
                        static_cast<int>(derive.uniform(0, spec.n == 2 ? 2 : 1));
                    break;
                case FamilyKind::Partition:
                    spec.n = static_cast<int>(derive.uniform(2, std::min(3, suite.n_max)));
                    spec.parts = static_cast<int>(derive.uniform(1, 2));
                    spec.limit_min = 0;
                    spec.limit_max = 1;
                    break;
                case FamilyKind::Matching:
                    spec.n = static_cast<int>(derive.uniform(2, std::min(5, suite.n_max)));
                    spec.slots = (spec.n <= 2) ? static_cast<int>(derive.uniform(1, 2)) : 1;
                    spec.density = 0.6;
                    break;
            }
            Instance inst;
            try {
                inst = generate(spec);
                unsigned __int128 tuples = 1;
                for (const ConstraintFamily& fam : inst.families) {
                    tuples *= enumerate_members(fam, inst.n, suite.family_cap).size();
                    if (tuples > suite.enum_limit)
                        throw enumeration_limit_error("suite: product space too large");
                }
            } catch (const enumeration_limit_error&) {
                continue;  // reject, redraw from the next sub-seed
            }
            out.push_back({static_cast<std::uint64_t>(slot), spec, std::move(inst)});
            accepted = true;
        }
        if (!accepted)
            throw guard_error("build_suite: slot " + std::to_string(slot) +
                              " rejected 256 consecutive draws");
    }
    return out;
}

}  // namespace nashcover
