#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nashcover/common.hpp"
#include "nashcover/core.hpp"

namespace nashcover {

enum class FamilyKind { Explicit, Knapsack, Cardinality, Partition, Matching };

inline const char* family_kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::Explicit: return "explicit";
        case FamilyKind::Knapsack: return "knapsack";
        case FamilyKind::Cardinality: return "cardinality";
        case FamilyKind::Partition: return "partition";
        case FamilyKind::Matching: return "matching";
    }
    return "?";
}

// Finite list of allowed subsets, in listed order.  Membership is exact
// match; this is the only kind that is not downward closed.
struct ExplicitFamily {
    std::vector<AgentSet> sets;
};

// X is allowed iff sum of demands over X fits in the capacity.
struct KnapsackFamily {
    std::vector<std::int64_t> demands;
    std::int64_t capacity = 0;
};

// X is allowed iff |X| <= k (uniform matroid).
struct CardinalityFamily {
    int k = 0;
};

// X is allowed iff |X intersect parts[j]| <= limits[j] for every j.
// Agents outside every part are unconstrained.
struct PartitionFamily {
    std::vector<AgentSet> parts;
    std::vector<int> limits;
};

// slots on the right, prefs[i] = slots agent i can occupy.  X is allowed
// iff a matching saturating X exists (transversal matroid).
struct MatchingFamily {
    int slots = 0;
    std::vector<std::vector<int>> prefs;
};

struct ConstraintFamily {
    std::variant<ExplicitFamily, KnapsackFamily, CardinalityFamily,
                 PartitionFamily, MatchingFamily>
        payload;

    FamilyKind kind() const { return static_cast<FamilyKind>(payload.index()); }

    static ConstraintFamily make_explicit(std::vector<AgentSet> sets) {
        if (sets.empty())
            throw invalid_input_error("explicit family: needs at least one subset");
        for (AgentSet& s : sets) s = canonical(std::move(s));
        return {ExplicitFamily{std::move(sets)}};
    }

    static ConstraintFamily make_knapsack(std::vector<std::int64_t> demands,
                                          std::int64_t capacity) {
        for (std::int64_t d : demands)
            if (d < 0) throw invalid_input_error("knapsack family: negative demand");
        if (capacity < 0) throw invalid_input_error("knapsack family: negative capacity");
        return {KnapsackFamily{std::move(demands), capacity}};
    }

    static ConstraintFamily make_cardinality(int k) {
        if (k < 0) throw invalid_input_error("cardinality family: k must be >= 0");
        return {CardinalityFamily{k}};
    }

    static ConstraintFamily make_partition(std::vector<AgentSet> parts,
                                           std::vector<int> limits) {
        if (parts.size() != limits.size())
            throw invalid_input_error("partition family: parts/limits size mismatch");
        for (AgentSet& p : parts) p = canonical(std::move(p));
        std::vector<int> seen;
        for (const AgentSet& p : parts)
            for (int a : p) seen.push_back(a);
        std::vector<int> sorted = seen;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw invalid_input_error("partition family: parts are not disjoint");
        for (int c : limits)
            if (c < 0) throw invalid_input_error("partition family: negative limit");
        return {PartitionFamily{std::move(parts), std::move(limits)}};
    }

    static ConstraintFamily make_matching(int slots,
                                          std::vector<std::vector<int>> prefs) {
        if (slots < 1) throw invalid_input_error("matching family: slots must be >= 1");
        for (auto& p : prefs) {
            p = canonical(std::move(p));
            for (int s : p)
                if (s < 0 || s >= slots)
                    throw invalid_input_error("matching family: slot index out of range");
        }
        return {MatchingFamily{slots, std::move(prefs)}};
    }
};

struct OracleResult {
    AgentSet subset;
    double weight = 0;
    bool exact = true;  // false when the knapsack profit-scaling path ran
};

namespace detail {

// Kuhn augmenting path: can `agent` be matched given current right-side
// assignment?  visited marks slots touched in this attempt.
inline bool try_augment(int agent, const std::vector<std::vector<int>>& prefs,
                        std::vector<int>& match_slot, std::vector<char>& visited) {
    for (int s : prefs[static_cast<std::size_t>(agent)]) {
        if (visited[static_cast<std::size_t>(s)]) continue;
        visited[static_cast<std::size_t>(s)] = 1;
        int occupant = match_slot[static_cast<std::size_t>(s)];
        if (occupant < 0 || try_augment(occupant, prefs, match_slot, visited)) {
            match_slot[static_cast<std::size_t>(s)] = agent;
            return true;
        }
    }
    return false;
}

inline bool matching_saturates(const MatchingFamily& f, const AgentSet& x) {
    std::vector<int> match_slot(static_cast<std::size_t>(f.slots), -1);
    for (int a : x) {
        if (a < 0 || a >= static_cast<int>(f.prefs.size()))
            throw invalid_input_error("matching family: agent index out of range");
        std::vector<char> visited(static_cast<std::size_t>(f.slots), 0);
        if (!try_augment(a, f.prefs, match_slot, visited)) return false;
    }
    return true;
}

}  // namespace detail

inline bool contains(const ConstraintFamily& fam, const AgentSet& x) {
    if (!is_canonical(x))
        throw invalid_input_error("contains: subset is not canonical");
    switch (fam.kind()) {
        case FamilyKind::Explicit: {
            const auto& f = std::get<ExplicitFamily>(fam.payload);
            for (const AgentSet& s : f.sets)
                if (s == x) return true;
            return false;
        }
        case FamilyKind::Knapsack: {
            const auto& f = std::get<KnapsackFamily>(fam.payload);
            std::int64_t total = 0;
            for (int a : x) {
                if (a < 0 || a >= static_cast<int>(f.demands.size()))
                    throw invalid_input_error("knapsack family: agent index out of range");
                total += f.demands[static_cast<std::size_t>(a)];
            }
            return total <= f.capacity;
        }
        case FamilyKind::Cardinality: {
            const auto& f = std::get<CardinalityFamily>(fam.payload);
            return static_cast<int>(x.size()) <= f.k;
        }
        case FamilyKind::Partition: {
            const auto& f = std::get<PartitionFamily>(fam.payload);
            for (std::size_t j = 0; j < f.parts.size(); ++j) {
                int hits = 0;
                for (int a : x)
                    if (set_contains(f.parts[j], a)) ++hits;
                if (hits > f.limits[j]) return false;
            }
            return true;
        }
        case FamilyKind::Matching:
            return detail::matching_saturates(std::get<MatchingFamily>(fam.payload), x);
    }
    throw guard_error("contains: unreachable kind");
}

// Cheap feasible member.  The empty set is always allowed for the four
// non-explicit kinds given the constructor invariants.
inline AgentSet some_member(const ConstraintFamily& fam) {
    if (fam.kind() == FamilyKind::Explicit)
        return std::get<ExplicitFamily>(fam.payload).sets.front();
    return {};
}

// All members in lexicographic order, deduplicated.  Throws once more
// than `limit` members would be produced.  The four non-explicit kinds
// are downward closed, which lets the depth-first walk prune an entire
// branch as soon as one extension fails.
inline std::vector<AgentSet> enumerate_members(const ConstraintFamily& fam, int n,
                                               std::uint64_t limit) {
    if (n < 1) throw invalid_input_error("enumerate_members: n must be >= 1");
    if (fam.kind() == FamilyKind::Explicit) {
        const auto& f = std::get<ExplicitFamily>(fam.payload);
        std::vector<AgentSet> out = f.sets;
        for (const AgentSet& s : out) check_agent_range(s, n, "enumerate_members");
        std::sort(out.begin(), out.end(), lex_less);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        if (out.size() > limit)
            throw enumeration_limit_error("enumerate_members: explicit family exceeds limit");
        return out;
    }
    // Validate payload extents against n before walking.
    switch (fam.kind()) {
        case FamilyKind::Knapsack:
            if (static_cast<int>(std::get<KnapsackFamily>(fam.payload).demands.size()) != n)
                throw invalid_input_error("enumerate_members: demand count != n");
            break;
        case FamilyKind::Matching:
            if (static_cast<int>(std::get<MatchingFamily>(fam.payload).prefs.size()) != n)
                throw invalid_input_error("enumerate_members: preference count != n");
            break;
        case FamilyKind::Partition:
            for (const AgentSet& p : std::get<PartitionFamily>(fam.payload).parts)
                check_agent_range(p, n, "enumerate_members");
            break;
        default:
            break;
    }
    std::vector<AgentSet> out;
    out.push_back({});  // empty set is always a member here
    AgentSet cur;
    auto walk = [&](auto&& self, int next) -> void {
        for (int a = next; a < n; ++a) {
            cur.push_back(a);
            if (contains(fam, cur)) {
                if (out.size() >= limit)
                    throw enumeration_limit_error("enumerate_members: member count exceeds limit");
                out.push_back(cur);
                self(self, a + 1);
            }
            cur.pop_back();
        }
    };
    if (limit == 0)
        throw enumeration_limit_error("enumerate_members: member count exceeds limit");
    walk(walk, 0);
    return out;
}

namespace detail {

// Indices sorted by weight descending, index ascending, keeping only
// strictly positive weights.  Zero-weight agents never help the oracle
// objective and dropping them keeps results deterministic.
inline std::vector<int> positive_by_weight(const std::vector<double>& w) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(w.size()); ++i)
        if (w[static_cast<std::size_t>(i)] > 0) idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        double wa = w[static_cast<std::size_t>(a)], wb = w[static_cast<std::size_t>(b)];
        if (wa != wb) return wa > wb;
        return a < b;
    });
    return idx;
}

inline double weight_of(const AgentSet& x, const std::vector<double>& w) {
    double s = 0;
    for (int a : x) s += w[static_cast<std::size_t>(a)];
    return s;
}

inline OracleResult explicit_max(const ExplicitFamily& f, const std::vector<double>& w) {
    std::vector<AgentSet> members = f.sets;
    std::sort(members.begin(), members.end(), lex_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    const AgentSet* best = nullptr;
    double best_w = -std::numeric_limits<double>::infinity();
    for (const AgentSet& s : members) {
        for (int a : s)
            if (a < 0 || a >= static_cast<int>(w.size()))
                throw invalid_input_error("explicit family: agent index out of range");
        double ws = weight_of(s, w);
        if (ws > best_w) {
            best_w = ws;
            best = &s;
        }
    }
    return {*best, best_w, true};
}

inline OracleResult cardinality_max(const CardinalityFamily& f,
                                    const std::vector<double>& w) {
    std::vector<int> idx = positive_by_weight(w);
    if (static_cast<int>(idx.size()) > f.k) idx.resize(static_cast<std::size_t>(f.k));
    AgentSet x = canonical(std::move(idx));
    return {x, weight_of(x, w), true};
}

inline OracleResult partition_max(const PartitionFamily& f,
                                  const std::vector<double>& w) {
    const int n = static_cast<int>(w.size());
    std::vector<int> part_of(static_cast<std::size_t>(n), -1);
    for (std::size_t j = 0; j < f.parts.size(); ++j) {
        for (int a : f.parts[j]) {
            if (a < 0 || a >= n)
                throw invalid_input_error("partition family: agent index out of range");
            part_of[static_cast<std::size_t>(a)] = static_cast<int>(j);
        }
    }
    std::vector<int> taken(f.parts.size(), 0);
    AgentSet x;
    for (int a : positive_by_weight(w)) {
        int j = part_of[static_cast<std::size_t>(a)];
        if (j < 0) {
            x.push_back(a);  // unconstrained agent
        } else if (taken[static_cast<std::size_t>(j)] < f.limits[static_cast<std::size_t>(j)]) {
            ++taken[static_cast<std::size_t>(j)];
            x.push_back(a);
        }
    }
    x = canonical(std::move(x));
    return {x, weight_of(x, w), true};
}

// Greedy by weight with augmenting paths is the matroid greedy on the
// transversal matroid, hence exact for this oracle.
inline OracleResult matching_max(const MatchingFamily& f, const std::vector<double>& w) {
    if (f.prefs.size() != w.size())
        throw invalid_input_error("matching family: preference count != weight count");
    std::vector<int> match_slot(static_cast<std::size_t>(f.slots), -1);
    AgentSet x;
    for (int a : positive_by_weight(w)) {
        std::vector<char> visited(static_cast<std::size_t>(f.slots), 0);
        if (try_augment(a, f.prefs, match_slot, visited)) x.push_back(a);
    }
    x = canonical(std::move(x));
    return {x, weight_of(x, w), true};
}

// 0/1 knapsack.  Two tables are possible: capacity-indexed (exact) and
// scaled-profit-indexed (the (1-beta) guarantee).  We build whichever is
// smaller; when the capacity table is no larger than the scaled one the
// exact answer is also the cheaper one and trivially satisfies the
// (1-beta) contract.  Scaled table: mu = beta*max_weight/n, profits
// floor(w/mu), minimize demand per scaled profit.
inline OracleResult knapsack_max(const KnapsackFamily& f, const std::vector<double>& w,
                                 double beta) {
    const int n = static_cast<int>(w.size());
    if (static_cast<int>(f.demands.size()) != n)
        throw invalid_input_error("knapsack family: demand count != weight count");

    std::vector<int> items;  // positive weight and fits alone
    for (int i = 0; i < n; ++i)
        if (w[static_cast<std::size_t>(i)] > 0 &&
            f.demands[static_cast<std::size_t>(i)] <= f.capacity)
            items.push_back(i);
    if (items.empty()) return {{}, 0.0, true};

    double top = 0;
    for (int i : items) top = std::max(top, w[static_cast<std::size_t>(i)]);
    const double mu = beta * top / static_cast<double>(n);
    std::int64_t scaled_total = 0;
    std::vector<std::int64_t> profit(items.size());
    for (std::size_t j = 0; j < items.size(); ++j) {
        profit[j] = static_cast<std::int64_t>(std::floor(w[static_cast<std::size_t>(items[j])] / mu));
        scaled_total += profit[j];
    }

    constexpr std::int64_t kMaxStates = 300'000'000;
    const bool use_capacity_table = f.capacity <= scaled_total;
    const std::int64_t states = (use_capacity_table ? f.capacity : scaled_total) + 1;
    if (states > kMaxStates)
        throw enumeration_limit_error("knapsack oracle: state table exceeds limit");

    const std::size_t m = items.size();
    std::vector<std::vector<char>> take(m, std::vector<char>(static_cast<std::size_t>(states), 0));
    AgentSet x;

    if (use_capacity_table) {
        std::vector<double> best(static_cast<std::size_t>(states), 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const std::int64_t d = f.demands[static_cast<std::size_t>(items[j])];
            const double wj = w[static_cast<std::size_t>(items[j])];
            for (std::int64_t c = states - 1; c >= d; --c) {
                double cand = best[static_cast<std::size_t>(c - d)] + wj;
                if (cand > best[static_cast<std::size_t>(c)]) {
                    best[static_cast<std::size_t>(c)] = cand;
                    take[j][static_cast<std::size_t>(c)] = 1;
                }
            }
        }
        std::int64_t c = states - 1;
        for (std::size_t j = m; j-- > 0;) {
            if (take[j][static_cast<std::size_t>(c)]) {
                x.push_back(items[j]);
                c -= f.demands[static_cast<std::size_t>(items[j])];
            }
        }
        x = canonical(std::move(x));
        return {x, weight_of(x, w), true};
    }

    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 2;
    std::vector<std::int64_t> min_demand(static_cast<std::size_t>(states), inf);
    min_demand[0] = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::int64_t d = f.demands[static_cast<std::size_t>(items[j])];
        if (profit[j] == 0) continue;  // adds demand, no scaled profit
        for (std::int64_t p = states - 1; p >= profit[j]; --p) {
            std::int64_t cand = min_demand[static_cast<std::size_t>(p - profit[j])];
            if (cand >= inf) continue;
            cand += d;
            if (cand < min_demand[static_cast<std::size_t>(p)]) {
                min_demand[static_cast<std::size_t>(p)] = cand;
                take[j][static_cast<std::size_t>(p)] = 1;
            }
        }
    }
    std::int64_t best_p = 0;
    for (std::int64_t p = states - 1; p > 0; --p) {
        if (min_demand[static_cast<std::size_t>(p)] <= f.capacity) {
            best_p = p;
            break;
        }
    }
    std::int64_t p = best_p;
    for (std::size_t j = m; j-- > 0;) {
        if (p > 0 && take[j][static_cast<std::size_t>(p)]) {
            x.push_back(items[j]);
            p -= profit[j];
        }
    }
    if (p != 0) throw guard_error("knapsack oracle: scaled table reconstruction failed");
    x = canonical(std::move(x));
    return {x, weight_of(x, w), false};
}

}  // namespace detail

// Weighted improvement oracle: a member whose weight is at least
// (1-beta) times the family optimum.  Every kind except the knapsack
// scaled path returns an exact optimum.
inline OracleResult approx_max_weight(const ConstraintFamily& fam,
                                      const std::vector<double>& weights, double beta) {
    if (weights.empty())
        throw invalid_input_error("approx_max_weight: empty weight vector");
    if (!(beta > 0.0) || !(beta < 1.0))
        throw invalid_input_error("approx_max_weight: beta must lie in (0,1)");
    for (double v : weights)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw invalid_input_error("approx_max_weight: weights must be finite and >= 0");
    switch (fam.kind()) {
        case FamilyKind::Explicit:
            return detail::explicit_max(std::get<ExplicitFamily>(fam.payload), weights);
        case FamilyKind::Knapsack:
            return detail::knapsack_max(std::get<KnapsackFamily>(fam.payload), weights, beta);
        case FamilyKind::Cardinality:
            return detail::cardinality_max(std::get<CardinalityFamily>(fam.payload), weights);
        case FamilyKind::Partition:
            return detail::partition_max(std::get<PartitionFamily>(fam.payload), weights);
        case FamilyKind::Matching:
            return detail::matching_max(std::get<MatchingFamily>(fam.payload), weights);
    }
    throw guard_error("approx_max_weight: unreachable kind");
}

inline OracleResult approx_max_weight(const ConstraintFamily& fam,
                                      const WeightVector& weights, double beta) {
    return approx_max_weight(fam, weights.weights, beta);
}

}  // namespace nashcover
