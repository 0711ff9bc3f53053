#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nashcover/nashcover.hpp"

using namespace nashcover;
using Catch::Matchers::WithinAbs;

namespace {

Instance two_round_instance() {
    Instance inst;
    inst.n = 3;
    inst.families.push_back(ConstraintFamily::make_explicit({{0, 1}, {2}}));
    inst.families.push_back(ConstraintFamily::make_explicit({{0}, {1, 2}}));
    return inst;
}

}  // namespace

TEST_CASE("brute force finds the optimum of a small instance") {
    const Instance inst = two_round_instance();
    const ExactResult res = brute_force_opt(inst);
    CHECK(res.solution.sets == std::vector<AgentSet>{{0, 1}, {1, 2}});
    CHECK_THAT(res.nsw, WithinAbs(2.2894284851066637, 1e-15));
    CHECK(res.profile.values == std::vector<int>{2, 3, 2});
    CHECK(res.explored == 4);
}

TEST_CASE("brute force breaks ties toward the first tuple in listing order") {
    Instance inst;
    inst.n = 2;
    inst.families.push_back(ConstraintFamily::make_cardinality(1));
    // members in order: {}, {0}, {1}; the two singletons tie at sqrt(2)
    const ExactResult res = brute_force_opt(inst);
    CHECK(res.solution.sets == std::vector<AgentSet>{{0}});
    CHECK_THAT(res.nsw, WithinAbs(1.4142135623730951, 1e-15));
    CHECK(res.explored == 3);
}

TEST_CASE("brute force rejects oversized search spaces") {
    const Instance inst = two_round_instance();
    CHECK_THROWS_AS(brute_force_opt(inst, 3), enumeration_limit_error);
    CHECK_NOTHROW(brute_force_opt(inst, 4));
}

TEST_CASE("wide instances fall back to log-space comparison") {
    // 121 agents pushes the value product beyond 120 bits of headroom
    Instance inst;
    inst.n = 121;
    AgentSet everyone;
    for (int i = 0; i < inst.n; ++i) everyone.push_back(i);
    inst.families.push_back(ConstraintFamily::make_explicit({{0}, everyone}));
    const ExactResult res = brute_force_opt(inst);
    CHECK(res.solution.sets == std::vector<AgentSet>{everyone});
    CHECK_THAT(res.nsw, WithinAbs(2.0, 1e-12));
    CHECK(res.explored == 2);
}

TEST_CASE("brute force agrees with the solver ratio guarantee on random instances") {
    SplitMix64 rng{2718};
    for (int trial = 0; trial < 30; ++trial) {
        GenSpec spec;
        spec.seed = rng.next();
        spec.n = static_cast<int>(rng.uniform(2, 4));
        spec.T = static_cast<int>(rng.uniform(1, 3));
        spec.kind = FamilyKind::Explicit;
        spec.sets_per_round = 3;
        spec.set_size_min = 1;
        spec.set_size_max = spec.n;
        const Instance inst = generate(spec);
        const ExactResult best = brute_force_opt(inst);
        SolverConfig config;
        config.trace_level = TraceLevel::none;
        const SolveResult run = solve(inst, config);
        const double got = nsw(coverage_values(inst, run.solution));
        CHECK(got <= best.nsw + 1e-9);
        const double floor = 1.0 / (18.0 + 1.0 / (2.0 * inst.n * inst.rounds()));
        CHECK(got >= floor * best.nsw - 1e-9);
    }
}

TEST_CASE("exact oracle helper maximizes over any family by enumeration") {
    const auto fam = ConstraintFamily::make_knapsack({3, 5, 2}, 7);
    const OracleResult res = brute_force_max_weight(fam, {0.3, 0.6, 0.25}, 1000);
    CHECK(res.subset == AgentSet{1, 2});
    CHECK_THAT(res.weight, WithinAbs(0.85, 1e-15));
    CHECK(res.exact);
    // ties resolve to the earliest member in subset listing order
    const auto card = ConstraintFamily::make_cardinality(1);
    const OracleResult tie = brute_force_max_weight(card, {0.5, 0.5}, 1000);
    CHECK(tie.subset == AgentSet{0});
}

TEST_CASE("unsmoothed optimum reports raw counts and zeros") {
    // triangle: agents are edges (0,1),(0,2),(1,2); members are per-vertex edge sets
    VertexCoverInput graph;
    graph.vertices = 3;
    graph.edges = {{0, 1}, {0, 2}, {1, 2}};
    graph.k = 2;
    const Instance two = from_vertex_cover(graph);
    const UnsmoothedExactResult opt2 = brute_force_unsmoothed_opt(two);
    CHECK_THAT(opt2.nsw_c, WithinAbs(1.2599210498948732, 1e-12));  // cbrt(2)
    CHECK(opt2.counts.size() == 3);
    int covered = 0;
    for (int c : opt2.counts) covered += (c > 0);
    CHECK(covered == 3);

    graph.k = 1;
    const Instance one = from_vertex_cover(graph);
    const UnsmoothedExactResult opt1 = brute_force_unsmoothed_opt(one);
    CHECK(opt1.nsw_c == 0.0);  // any single vertex misses an edge
}

TEST_CASE("unsmoothed optimum respects the enumeration cap") {
    VertexCoverInput graph;
    graph.vertices = 3;
    graph.edges = {{0, 1}, {0, 2}, {1, 2}};
    graph.k = 2;
    const Instance inst = from_vertex_cover(graph);
    CHECK_THROWS_AS(brute_force_unsmoothed_opt(inst, 8), enumeration_limit_error);
    CHECK_NOTHROW(brute_force_unsmoothed_opt(inst, 9));
}

TEST_CASE("explored counts multiply member list sizes") {
    Instance inst;
    inst.n = 3;
    inst.families.push_back(ConstraintFamily::make_cardinality(1));  // 4 members
    inst.families.push_back(ConstraintFamily::make_explicit({{0}, {1}, {2}}));
    const ExactResult res = brute_force_opt(inst);
    CHECK(res.explored == 12);
}
