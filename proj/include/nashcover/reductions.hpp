#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nashcover/common.hpp"
#include "nashcover/core.hpp"
#include "nashcover/exact.hpp"
#include "nashcover/families.hpp"
#include "nashcover/instance.hpp"

namespace nashcover {

// Max-k-coverage with uniform set size and k * set_size = universe_size,
// so a perfect cover touches every element exactly once.
struct MaxCoverageInput {
    int universe_size = 0;
    std::vector<AgentSet> sets;
    int k = 0;
    int uniform_size = 0;
};

// issues[t][a] is the 0/1 utility vector (length n) of alternative a.
struct PublicDecisionInput {
    int n = 0;
    std::vector<std::vector<std::vector<int>>> issues;
};

// valued[i] = goods agent i assigns value 1 (all other goods value 0).
struct GoodsAllocationInput {
    int n = 0;
    int m = 0;
    std::vector<AgentSet> valued;
};

struct VertexCoverInput {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
    int k = 0;
};

namespace detail {

inline std::vector<AgentSet> dedup_keep_order(std::vector<AgentSet> sets) {
    std::vector<AgentSet> out;
    for (AgentSet& s : sets) {
        bool seen = false;
        for (const AgentSet& o : out)
            if (o == s) { seen = true; break; }
        if (!seen) out.push_back(std::move(s));
    }
    return out;
}

}  // namespace detail

inline Instance from_max_k_coverage(const MaxCoverageInput& in) {
    if (in.universe_size < 1)
        throw invalid_input_error("max coverage: universe must be non-empty");
    if (in.k < 1) throw invalid_input_error("max coverage: k must be >= 1");
    if (in.uniform_size < 1) throw invalid_input_error("max coverage: set size must be >= 1");
    if (in.k * in.uniform_size != in.universe_size)
        throw invalid_input_error("max coverage: k * uniform_size must equal universe size");
    if (in.sets.empty()) throw invalid_input_error("max coverage: empty set collection");
    std::vector<AgentSet> sets;
    sets.reserve(in.sets.size());
    for (const AgentSet& s : in.sets) {
        AgentSet c = canonical(s);
        if (static_cast<int>(c.size()) != in.uniform_size)
            throw invalid_input_error("max coverage: set size is not uniform");
        check_agent_range(c, in.universe_size, "max coverage");
        sets.push_back(std::move(c));
    }
    sets = detail::dedup_keep_order(std::move(sets));
    Instance inst;
    inst.n = in.universe_size;
    inst.families.assign(static_cast<std::size_t>(in.k),
                         ConstraintFamily::make_explicit(sets));
    return inst;
}

inline Instance from_public_decisions(const PublicDecisionInput& in) {
    if (in.n < 1) throw invalid_input_error("public decisions: n must be >= 1");
    if (in.issues.empty()) throw invalid_input_error("public decisions: needs at least one issue");
    Instance inst;
    inst.n = in.n;
    for (std::size_t t = 0; t < in.issues.size(); ++t) {
        const auto& alts = in.issues[t];
        if (alts.empty())
            throw invalid_input_error("public decisions: issue " + std::to_string(t) +
                                      " has no alternatives");
        std::vector<AgentSet> supporters;
        supporters.reserve(alts.size());
        for (const auto& util : alts) {
            if (static_cast<int>(util.size()) != in.n)
                throw invalid_input_error("public decisions: utility vector length != n");
            AgentSet sup;
            for (int i = 0; i < in.n; ++i) {
                int u = util[static_cast<std::size_t>(i)];
                if (u != 0 && u != 1)
                    throw invalid_input_error("public decisions: utilities must be 0/1");
                if (u == 1) sup.push_back(i);
            }
            supporters.push_back(std::move(sup));
        }
        supporters = detail::dedup_keep_order(std::move(supporters));
        inst.families.push_back(ConstraintFamily::make_explicit(std::move(supporters)));
    }
    return inst;
}

inline Instance from_goods_allocation(const GoodsAllocationInput& in) {
    if (in.n < 1) throw invalid_input_error("goods allocation: n must be >= 1");
    if (in.m < 1) throw invalid_input_error("goods allocation: m must be >= 1");
    if (static_cast<int>(in.valued.size()) != in.n)
        throw invalid_input_error("goods allocation: valued-set count != n");
    std::vector<AgentSet> valued;
    valued.reserve(in.valued.size());
    for (const AgentSet& v : in.valued) {
        AgentSet c = canonical(v);
        check_agent_range(c, in.m, "goods allocation");
        valued.push_back(std::move(c));
    }
    Instance inst;
    inst.n = in.n;
    for (int g = 0; g < in.m; ++g) {
        std::vector<AgentSet> singles;
        for (int i = 0; i < in.n; ++i)
            if (set_contains(valued[static_cast<std::size_t>(i)], g))
                singles.push_back({i});
        if (singles.empty())
            throw unsatisfiable_family_error("goods allocation: good " + std::to_string(g) +
                                             " is valued by nobody");
        inst.families.push_back(ConstraintFamily::make_explicit(std::move(singles)));
    }
    return inst;
}

// Agents are the deduplicated edges in (min,max) lexicographic order; each
// of the k rounds picks the edge set of one vertex.
inline Instance from_vertex_cover(const VertexCoverInput& in) {
    if (in.vertices < 1) throw invalid_input_error("vertex cover: needs at least one vertex");
    if (in.k < 1) throw invalid_input_error("vertex cover: k must be >= 1");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(in.edges.size());
    for (auto [u, v] : in.edges) {
        if (u == v) throw invalid_input_error("vertex cover: self-loop");
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= in.vertices)
            throw invalid_input_error("vertex cover: vertex index out of range");
        edges.emplace_back(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.empty()) throw invalid_input_error("vertex cover: needs at least one edge");

    std::vector<AgentSet> incident(static_cast<std::size_t>(in.vertices));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        incident[static_cast<std::size_t>(edges[e].first)].push_back(static_cast<int>(e));
        incident[static_cast<std::size_t>(edges[e].second)].push_back(static_cast<int>(e));
    }
    std::vector<AgentSet> members = detail::dedup_keep_order(std::move(incident));
    Instance inst;
    inst.n = static_cast<int>(edges.size());
    inst.families.assign(static_cast<std::size_t>(in.k),
                         ConstraintFamily::make_explicit(std::move(members)));
    return inst;
}

// AM-GM ceiling on the smoothed NSW of a solution leaving a fraction x of
// agents uncovered, for instances built by from_max_k_coverage.
inline double gap_bound(double x) {
    if (!(x >= 0.0) || !(x < 1.0))
        throw invalid_input_error("gap_bound: x must lie in [0,1)");
    return std::pow((2.0 - x) / (1.0 - x), 1.0 - x);
}

struct GapVerdict {
    bool pass = false;
    bool yes_mode = false;
    double nsw_value = 0;  // certificate NSW, or brute-force optimum
    double bound = 0;      // 2 on the yes side, gap_bound(l/n) on the no side
    int uncovered = 0;     // agents at value 1 in the optimum (no side)
    std::string detail;
};

namespace detail {

inline void check_coverage_shape(const Instance& inst) {
    if (inst.families.empty() || inst.families.front().kind() != FamilyKind::Explicit)
        throw invalid_input_error("gap verdict: instance is not a coverage reduction");
    const auto& first = std::get<ExplicitFamily>(inst.families.front().payload);
    const std::size_t tau = first.sets.front().size();
    for (const ConstraintFamily& fam : inst.families) {
        if (fam.kind() != FamilyKind::Explicit)
            throw invalid_input_error("gap verdict: instance is not a coverage reduction");
        const auto& f = std::get<ExplicitFamily>(fam.payload);
        if (f.sets != first.sets)
            throw invalid_input_error("gap verdict: rounds have differing families");
        for (const AgentSet& s : f.sets)
            if (s.size() != tau)
                throw invalid_input_error("gap verdict: set size is not uniform");
    }
    if (static_cast<std::size_t>(inst.n) != tau * inst.families.size())
        throw invalid_input_error("gap verdict: k * set_size != n");
}

}  // namespace detail

// With a certificate: checks it is a perfect cover (every agent exactly
// once, NSW exactly 2).  Without: brute-forces the optimum and checks it
// against the uncovered-fraction ceiling, including the 1.83 cap when at
// least n/e agents stay uncovered.
inline GapVerdict verify_gap(const Instance& inst,
                             const std::optional<Solution>& certificate,
                             std::uint64_t limit = 1'000'000) {
    validate_instance(inst);
    detail::check_coverage_shape(inst);
    GapVerdict verdict;
    if (certificate) {
        verdict.yes_mode = true;
        verdict.bound = 2.0;
        if (!validate_solution(inst, *certificate).feasible) {
            verdict.detail = "certificate set is not in its family";
            return verdict;
        }
        const CoverageProfile prof = coverage_values(inst, *certificate);
        for (int i = 0; i < prof.agents(); ++i) {
            if (prof.values[static_cast<std::size_t>(i)] != 2) {
                verdict.detail = "agent " + std::to_string(i) + " covered " +
                                 std::to_string(prof.values[static_cast<std::size_t>(i)] - 1) +
                                 " times";
                return verdict;
            }
        }
        verdict.nsw_value = nsw(prof);
        verdict.pass = std::fabs(verdict.nsw_value - 2.0) <= 1e-12;
        verdict.detail = verdict.pass ? "perfect cover" : "geometric mean drifted from 2";
        return verdict;
    }

    const ExactResult best = brute_force_opt(inst, limit);
    int uncovered = 0;
    for (int v : best.profile.values)
        if (v == 1) ++uncovered;
    verdict.uncovered = uncovered;
    verdict.nsw_value = best.nsw;
    const double x = static_cast<double>(uncovered) / static_cast<double>(inst.n);
    verdict.bound = gap_bound(x);
    verdict.pass = best.nsw <= verdict.bound + 1e-9;
    verdict.detail = "optimum leaves " + std::to_string(uncovered) + " agents uncovered";
    if (static_cast<double>(uncovered) >= static_cast<double>(inst.n) / std::exp(1.0)) {
        if (!(best.nsw <= 1.83 + 1e-9)) {
            verdict.pass = false;
            verdict.detail += "; exceeds the 1.83 cap";
        }
    }
    return verdict;
}

struct DichotomyVerdict {
    bool pass = false;
    bool has_cover = false;  // some vertex set of size <= k covers all edges
    double nsw_c = 0;        // unsmoothed optimum of the reduced instance
    std::string detail;
};

// The reduced instance has unsmoothed optimum >= 1 exactly when a vertex
// cover of size <= k exists, and exactly 0 otherwise.
inline DichotomyVerdict verify_unsmoothed_dichotomy(const VertexCoverInput& in,
                                                    std::uint64_t limit = 1'000'000) {
    const Instance inst = from_vertex_cover(in);

    if (in.vertices > 25)
        throw enumeration_limit_error("dichotomy: vertex set too large to enumerate");
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : in.edges) {
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    DichotomyVerdict verdict;
    const std::uint64_t top = 1ULL << in.vertices;
    for (std::uint64_t mask = 0; mask < top && !verdict.has_cover; ++mask) {
        if (std::popcount(mask) > in.k) continue;
        bool covers = true;
        for (auto [u, v] : edges) {
            if (!((mask >> u) & 1) && !((mask >> v) & 1)) { covers = false; break; }
        }
        verdict.has_cover = covers;
    }

    const UnsmoothedExactResult best = brute_force_unsmoothed_opt(inst, limit);
    verdict.nsw_c = best.nsw_c;
    if (verdict.has_cover) {
        verdict.pass = best.nsw_c >= 1.0 - 1e-12;
        verdict.detail = verdict.pass ? "cover exists and every edge is hit"
                                      : "cover exists but optimum misses an edge";
    } else {
        verdict.pass = best.nsw_c == 0.0;
        verdict.detail = verdict.pass ? "no cover and some edge is always missed"
                                      : "no cover yet optimum covers everything";
    }
    return verdict;
}

}  // namespace nashcover
