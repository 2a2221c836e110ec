#include "c2convex/oracle.hpp"

#include "c2convex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace c2convex::oracle {

namespace {

double simpson(double h, double fa, double fm, double fb) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double simpson_rec(const Fn& f, double a, double m, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth, int force,
                   bool& converged) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(m - a, fa, flm, fm);
    double right = simpson(b - m, fm, frm, fb);
    double err = (left + right - whole) / 15.0;
    // Forced initial bisections guard against integrands whose support the
    // first few sample points miss entirely; the width floor guards against
    // jump discontinuities, whose residual error is below any tolerance of
    // interest once the straddling interval is this thin.
    bool too_thin = (b - a) <= 1e-14 * (std::abs(a) + std::abs(b) + 1.0);
    if (force <= 0 && (std::abs(err) <= tol || too_thin)) return left + right + err;
    if (depth <= 0) {
        converged = false;
        return left + right + err;
    }
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                       force - 1, converged) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                       force - 1, converged);
}

} // namespace

double adaptive_simpson(const Fn& f, double a, double b, double tol, int max_depth) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = simpson(b - a, fa, fm, fb);
    bool converged = true;
    double v = simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth, 10,
                           converged);
    if (!converged) fail("NonConvergence", "adaptive Simpson hit the depth cap");
    return v;
}

std::pair<double, double> quad_moments(const Fn& h, double a, double b, double tol) {
    double mass = adaptive_simpson(h, a, b, tol);
    double moment = adaptive_simpson([&](double t) { return t * h(t); }, a, b, tol);
    return {mass, moment};
}

double fd_check(const Fn& u, double x, int order, double step) {
    if (order == 1) return (u(x + step) - u(x - step)) / (2.0 * step);
    if (order == 2) return (u(x + step) - 2.0 * u(x) + u(x - step)) / (step * step);
    fail("InvalidArgument", "fd_check order must be 1 or 2");
}

SampleReport sample_checks(const Fn& f, const Fn& g, double lo, double hi,
                           const OracleConfig& cfg) {
    SampleReport rep;
    const int n = cfg.grid_points;
    std::vector<double> gv(n + 1);
    double scale = 1.0;
    for (int i = 0; i <= n; ++i) {
        double x = lo + (hi - lo) * i / n;
        gv[i] = g(x);
        double fx = f(x);
        scale = std::max({scale, std::abs(fx), std::abs(gv[i])});
        rep.grid_sup = std::max(rep.grid_sup, std::abs(fx - gv[i]));
    }
    // Midpoint convexity on consecutive triples of the uniform grid.
    const double conv_tol = 1e-10 * scale;
    for (int i = 1; i < n; ++i) {
        if (gv[i] > 0.5 * (gv[i - 1] + gv[i + 1]) + conv_tol) ++rep.convexity_violations;
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(lo, hi);
    long hits = 0;
    const double member_tol = 1e-12 * scale;
    for (long i = 0; i < cfg.mc_samples; ++i) {
        double x = uni(rng);
        if (std::abs(f(x) - g(x)) > member_tol) ++hits;
    }
    double p = static_cast<double>(hits) / cfg.mc_samples;
    rep.mc_measure = p * (hi - lo);
    rep.mc_sigma = (hi - lo) * std::sqrt(std::max(p * (1.0 - p), 1.0 / cfg.mc_samples) /
                                         cfg.mc_samples);
    return rep;
}

} // namespace c2convex::oracle
