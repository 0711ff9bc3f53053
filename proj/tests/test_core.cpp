#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nashcover/nashcover.hpp"

using namespace nashcover;
using Catch::Matchers::WithinAbs;

TEST_CASE("coverage values count memberships plus one") {
    const std::vector<AgentSet> sets = {{0, 1}, {1, 2}};
    const CoverageProfile p = coverage_values(3, sets);
    CHECK(p.values == std::vector<int>{2, 3, 2});
    CHECK(p.agents() == 3);
}

TEST_CASE("empty selections leave every value at one") {
    const CoverageProfile p = coverage_values(4, {{}, {}, {}});
    CHECK(p.values == std::vector<int>{1, 1, 1, 1});
    CHECK(nsw(p) == 1.0);
    CHECK(log_welfare(p) == 0.0);
}

TEST_CASE("coverage values validate their input") {
    using Sets = std::vector<AgentSet>;
    CHECK_THROWS_AS(coverage_values(0, Sets{}), invalid_input_error);
    CHECK_THROWS_AS(coverage_values(3, Sets{{1, 0}}), invalid_input_error);
    CHECK_THROWS_AS(coverage_values(3, Sets{{0, 0}}), invalid_input_error);
    CHECK_THROWS_AS(coverage_values(3, Sets{{3}}), invalid_input_error);
    CHECK_THROWS_AS(coverage_values(3, Sets{{-1}}), invalid_input_error);
}

TEST_CASE("log welfare and geometric mean on a known profile") {
    CoverageProfile p;
    p.values = {2, 3, 2};
    CHECK_THAT(log_welfare(p), WithinAbs(2.4849066497880004, 1e-15));
    CHECK_THAT(nsw(p), WithinAbs(2.2894284851066637, 1e-15));
}

TEST_CASE("welfare bounds over bulk random profiles") {
    SplitMix64 rng{20240817};
    for (int trial = 0; trial < 200; ++trial) {
        const int n = static_cast<int>(rng.uniform(1, 8));
        const int T = static_cast<int>(rng.uniform(1, 6));
        std::vector<AgentSet> sets(static_cast<std::size_t>(T));
        for (AgentSet& s : sets) {
            for (int a = 0; a < n; ++a)
                if (rng.uniform01() < 0.5) s.push_back(a);
        }
        const CoverageProfile p = coverage_values(n, sets);
        double lo = 1e300, hi = -1e300;
        for (int v : p.values) {
            REQUIRE(v >= 1);
            REQUIRE(v <= T + 1);
            lo = std::min(lo, static_cast<double>(v));
            hi = std::max(hi, static_cast<double>(v));
        }
        const double mean = nsw(p);
        CHECK(mean >= lo - 1e-12);
        CHECK(mean <= hi + 1e-12);
        CHECK_THAT(log_welfare(p), WithinAbs(n * std::log(mean), 1e-9));
    }
}

TEST_CASE("replace swaps one round and canonicalizes the new set") {
    Solution sol;
    sol.sets = {{0, 1}, {1, 2}};
    const Solution out = replace(sol, 1, {2, 0, 2});
    CHECK(out.sets == std::vector<AgentSet>{{0, 1}, {0, 2}});
    CHECK(sol.sets == std::vector<AgentSet>{{0, 1}, {1, 2}});  // input untouched

    CHECK_THROWS_AS(replace(sol, -1, {0}), invalid_input_error);
    CHECK_THROWS_AS(replace(sol, 2, {0}), invalid_input_error);
}

TEST_CASE("lagging agents use a strict threshold") {
    CoverageProfile mine, best;
    mine.values = {2, 1, 5};
    best.values = {4, 10, 5};
    const SuboptimalReport rep = suboptimal_agents(mine, best, 4, 0.001);
    // thresholds: 4/9.004, 10/9.004 = 1.1106175033318525, 5/9.004
    CHECK(rep.members == AgentSet{1});
    CHECK_THAT(rep.bound, WithinAbs(0.75, 1e-15));
    CHECK(rep.alpha == 4);
}

TEST_CASE("boundary value is not a lagging agent") {
    CoverageProfile mine, best;
    mine.values = {1};
    best.values = {12};
    // alpha=4, epsilon=0.75 gives divisor 12, threshold exactly 1
    const SuboptimalReport rep = suboptimal_agents(mine, best, 4, 0.75);
    CHECK(rep.members.empty());
}

TEST_CASE("lagging-agent parameters are validated") {
    CoverageProfile a, b;
    a.values = {1, 1};
    b.values = {1};
    CHECK_THROWS_AS(suboptimal_agents(a, b, 4, 0.5), invalid_input_error);
    b.values = {1, 1};
    CHECK_THROWS_AS(suboptimal_agents(a, b, 0, 0.5), invalid_input_error);
    CHECK_THROWS_AS(suboptimal_agents(a, b, 4, 0.0), invalid_input_error);
    CHECK_THROWS_AS(suboptimal_agents(a, b, 4, 1.0), invalid_input_error);
    CHECK_NOTHROW(suboptimal_agents(a, b, 1, 0.5));
}

TEST_CASE("canonical sorting and dedup") {
    CHECK(canonical({3, 1, 2, 1}) == AgentSet{1, 2, 3});
    CHECK(canonical({}) == AgentSet{});
    CHECK(is_canonical({0, 2, 5}));
    CHECK_FALSE(is_canonical({2, 0}));
    CHECK_FALSE(is_canonical({1, 1}));
    CHECK(set_contains({0, 2, 5}, 2));
    CHECK_FALSE(set_contains({0, 2, 5}, 3));
    CHECK(lex_less({0, 1}, {0, 2}));
    CHECK(lex_less({0}, {0, 1}));
    CHECK_FALSE(lex_less({1}, {0, 5}));
}
