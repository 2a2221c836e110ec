#pragma once

#include "c2convex/bridge.hpp"
#include "c2convex/piecewise.hpp"
#include "c2convex/regularize.hpp"

#include <string>
#include <utility>
#include <vector>

namespace c2convex {

struct ToleranceConfig {
    double measure_budget = 0;    // eps_o > 0
    PiecewiseFn error_profile;    // eps(x), positive on the domain
    double tol_cont = 1e-9;       // x value scale
    double tol_conv = 1e-10;      // x curvature scale
    double shrink_factor = 0.5;
    int max_shrink = 60;
};

// Constant error profile on [lo, hi].
PiecewiseFn constant_profile(double lo, double hi, double value);

ToleranceConfig make_config(double lo, double hi, double budget, double profile_value);

struct CorrectionInterval {
    double center = 0;
    double a = 0, b = 0;
    BridgeKind kind = BridgeKind::Linear;
    double height = 0;       // H of the bump density
    double eps = 0;          // epsilon_bound of the source curvature
    double sup_error = 0;    // exact sup |f - bridge| over [a, b]
    int shrink_count = 0;
};

struct ApproxReport {
    double disagreement = 0;
    double sup_error_global = 0;
    double min_curvature = 0;
    double residual_c0 = 0, residual_c1 = 0, residual_c2 = 0;
    std::vector<CorrectionInterval> intervals;
    std::vector<KinkRecord> kinks;
    std::vector<std::pair<double, double>> certificates;   // (H, 4*eps)
};

// End-to-end Lusin approximation: kink rounding, correction-interval
// allocation, Hermite bridges with adaptive shrinking against the error
// profile, assembly, verification. Errors: ShrinkExhausted, NotConvex.
std::pair<ConvexFn, ApproxReport>
approximate(const ConvexFn& f, const ToleranceConfig& cfg);

// Partition the domain into cells, approximate per cell with graded budgets,
// fuse seams with glue. Same postconditions as approximate.
std::pair<ConvexFn, ApproxReport>
approximate_graded(const ConvexFn& f, const ToleranceConfig& cfg, int cells);

// Check every output contract: C2 residuals, convexity of g, disagreement
// vs budget, exact per-segment sup |f-g| vs the profile. Throws named
// violations: C2ResidualExceeded, NotConvexOutput, MeasureExceeded,
// ProfileExceeded.
ApproxReport verify(const ConvexFn& f, const ConvexFn& g, const ToleranceConfig& cfg);

} // namespace c2convex
