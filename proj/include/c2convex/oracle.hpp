#pragma once

#include <cstdint>
#include <functional>
#include <utility>

namespace c2convex::oracle {

// The oracle sees functions only through pointwise evaluation; it shares no
// code with the exact polynomial calculus.
using Fn = std::function<double(double)>;

struct OracleConfig {
    double quad_tol = 1e-10;
    int grid_points = 100000;
    long mc_samples = 1000000;
    double fd_step = 1e-6;
    std::uint64_t seed = 0x5eed5eedULL;
};

// Adaptive Simpson quadrature. Error code NonConvergence past the depth cap.
double adaptive_simpson(const Fn& f, double a, double b, double tol, int max_depth = 48);

// (integral h, integral t*h) over [a, b].
std::pair<double, double> quad_moments(const Fn& h, double a, double b,
                                       double tol = 1e-10);

// Central finite-difference derivative estimate of the given order (1 or 2).
double fd_check(const Fn& u, double x, int order, double step = 1e-6);

struct SampleReport {
    long convexity_violations = 0;
    double grid_sup = 0;          // grid sup |f - g|
    double mc_measure = 0;        // Monte-Carlo |{f != g}| estimate
    double mc_sigma = 0;          // one-sigma width of the estimate
};

// Grid midpoint-convexity of g, grid sup |f-g|, Monte-Carlo disagreement
// estimate. Membership test: |f(x)-g(x)| > 1e-12 x scale.
SampleReport sample_checks(const Fn& f, const Fn& g, double lo, double hi,
                           const OracleConfig& cfg = {});

} // namespace c2convex::oracle
