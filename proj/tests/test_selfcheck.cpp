#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nashcover/nashcover.hpp"

using namespace nashcover;
using Catch::Matchers::WithinAbs;

TEST_CASE("all numeric self-checks pass") {
    const SelfCheckResult res = run_selfcheck();
    CHECK(res.threshold_inequality);
    CHECK(res.tail_product);
    CHECK(res.bound_decreasing);
    CHECK(res.bound_at_1_over_e);
    CHECK(res.all());
}

TEST_CASE("tail product converges to one half") {
    const SelfCheckResult res = run_selfcheck();
    CHECK_THAT(res.tail_product_at_64, WithinAbs(0.5, 1e-6));
    // closed form: the partial product at depth l is 2^-(1 - (l+1)/2^l)
    CHECK_THAT(res.tail_product_at_64,
               WithinAbs(std::pow(2.0, -(1.0 - 65.0 * std::pow(2.0, -64.0))), 1e-12));
}

TEST_CASE("ceiling value at the critical fraction") {
    const SelfCheckResult res = run_selfcheck();
    CHECK_THAT(res.bound_value_at_1_over_e, WithinAbs(1.8213924445804231, 1e-12));
    CHECK(res.bound_value_at_1_over_e <= 1.83);
}

TEST_CASE("threshold inequality spot checks") {
    // (alpha*(2.25+eps)*v - 1)/(v+1) >= (1+eps/2)*alpha on alpha>=4, v>=1
    SplitMix64 rng{31337};
    for (int trial = 0; trial < 2000; ++trial) {
        const double alpha = 4.0 + rng.uniform01() * 60.0;
        const double v = 1.0 + rng.uniform01() * 63.0;
        const double eps = 0.001 + rng.uniform01() * 0.998;
        const double lhs = (alpha * (2.25 + eps) * v - 1.0) / (v + 1.0);
        const double rhs = (1.0 + eps / 2.0) * alpha;
        CHECK(lhs >= rhs - 1e-9);
    }
    // equality is approached at alpha=4, v=1, eps->0
    const double near = (4.0 * 2.25 * 1.0 - 1.0) / 2.0;
    CHECK_THAT(near, WithinAbs(4.0, 1e-15));
}

TEST_CASE("ceiling is strictly decreasing past the critical fraction") {
    double prev = gap_bound(1.0 / std::exp(1.0));
    for (double x = 0.4; x < 0.999; x += 0.01) {
        const double cur = gap_bound(x);
        CHECK(cur < prev);
        prev = cur;
    }
}
