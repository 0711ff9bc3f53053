#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nashcover/reductions.hpp"

namespace nashcover {

// Numeric verification of the standalone inequalities the analysis leans
// on.  Grids and tolerances are pinned; a failure signals a platform-math
// or implementation defect, not bad input.
struct SelfCheckResult {
    bool threshold_inequality = false;  // (a(2.25+e)v - 1)/(v+1) >= (1+e/2)a
    bool tail_product = false;          // prod_{d=2}^l (1/2^{d-1})^(1/2^d) >= 1/2, -> 1/2
    bool bound_decreasing = false;      // gap_bound strictly decreasing on [1/e, 0.999]
    bool bound_at_1_over_e = false;     // gap_bound(1/e) <= 1.83
    double tail_product_at_64 = 0;
    double bound_value_at_1_over_e = 0;

    bool all() const {
        return threshold_inequality && tail_product && bound_decreasing && bound_at_1_over_e;
    }
};

inline SelfCheckResult run_selfcheck() {
    SelfCheckResult res;

    // (a) grid alpha in [4,64], v in [1,64], epsilon in {0.001..0.999}.
    // alpha=4, v=1 is an exact equality, hence the 1e-9 slack.
    res.threshold_inequality = true;
    for (int alpha = 4; alpha <= 64 && res.threshold_inequality; ++alpha) {
        for (int v = 1; v <= 64 && res.threshold_inequality; ++v) {
            for (int k = 1; k <= 999; ++k) {
                const double eps = static_cast<double>(k) / 1000.0;
                const double lhs = (alpha * (2.25 + eps) * v - 1.0) / (v + 1.0);
                const double rhs = (1.0 + eps / 2.0) * alpha;
                if (!(lhs >= rhs - 1e-9)) {
                    res.threshold_inequality = false;
                    break;
                }
            }
        }
    }

    // (b) partial products stay above 1/2 and converge to it.  Work in the
    // exponent: product = 2^(-sum_{d=2}^l (d-1)/2^d).
    res.tail_product = true;
    double exponent = 0;
    for (int d = 2; d <= 64; ++d) {
        exponent += static_cast<double>(d - 1) * std::pow(0.5, d);
        const double product = std::pow(2.0, -exponent);
        if (!(product >= 0.5 - 1e-12)) res.tail_product = false;
        if (d == 64) {
            res.tail_product_at_64 = product;
            if (!(std::fabs(product - 0.5) < 1e-6)) res.tail_product = false;
        }
    }

    // (c) strict decrease on a 10^4-point grid over [1/e, 0.999].
    res.bound_decreasing = true;
    const double lo = 1.0 / std::exp(1.0);
    const double hi = 0.999;
    const int grid = 10000;
    double prev = gap_bound(lo);
    for (int i = 1; i < grid; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (grid - 1);
        const double cur = gap_bound(x);
        if (!(cur < prev)) {
            res.bound_decreasing = false;
            break;
        }
        prev = cur;
    }

    // (d) the value at the 1/e corner stays under the stated cap.
    res.bound_value_at_1_over_e = gap_bound(lo);
    res.bound_at_1_over_e = res.bound_value_at_1_over_e <= 1.83 &&
                            std::fabs(res.bound_value_at_1_over_e - 1.8215) < 5e-4;

    return res;
}

}  // namespace nashcover
