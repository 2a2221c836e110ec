#pragma once

#include "c2convex/poly.hpp"

#include <string>
#include <vector>

namespace c2convex {

// Piecewise polynomial on a bounded closed interval. Segment j lives on
// [xs[j], xs[j+1]] in the local coordinate x - xs[j]. Evaluation at an
// interior breakpoint uses the right segment; the domain's right endpoint
// uses the last segment.
struct PiecewiseFn {
    std::vector<double> xs;   // strictly increasing, size = segs.size() + 1
    std::vector<Poly> segs;

    PiecewiseFn() = default;
    PiecewiseFn(std::vector<double> breakpoints, std::vector<Poly> segments);

    double left() const { return xs.front(); }
    double right() const { return xs.back(); }
    double span() const { return xs.back() - xs.front(); }
    int segment_count() const { return static_cast<int>(segs.size()); }

    int segment_index(double x) const;

    double eval(double x, int order = 0) const;
    // Left-limit value/derivative at x (uses the segment ending at x when x
    // is a breakpoint).
    double eval_left(double x, int order = 0) const;

    PiecewiseFn derivative() const;

    // Max |value| at breakpoints plus segment extrema; used as a tolerance scale.
    double value_scale() const;
    double curvature_scale() const;

    // |left-limit - right-limit| per interior breakpoint for the given order.
    std::vector<double> continuity_residuals(int order) const;

    // Insert a breakpoint (no-op if already present within snapping distance).
    void split_at(double x);

    // The same function re-expressed on a finer breakpoint set (which must
    // contain this one's, up to snapping).
    PiecewiseFn refined(const std::vector<double>& new_xs) const;

    // Restriction to [lo, hi].
    PiecewiseFn restricted(double lo, double hi) const;
};

// Breakpoints of f and g merged, snapping points closer than
// 1e-12 x span. Domains must agree; error code DomainMismatch otherwise.
std::vector<double> merged_breakpoints(const PiecewiseFn& f, const PiecewiseFn& g);

// Replace base on [patch.left(), patch.right()] by patch.
PiecewiseFn splice(const PiecewiseFn& base, const PiecewiseFn& patch);

// Exact sup of |f-g| over [lo, hi], from critical points of the difference
// polynomial plus segment endpoints.
double sup_abs_diff(const PiecewiseFn& f, const PiecewiseFn& g, double lo, double hi);
double sup_abs_diff(const PiecewiseFn& f, const PiecewiseFn& g);

// Total length of refined segments on which f - g is not the identically
// zero polynomial (coefficientwise, after normalization). Exact.
double disagreement_measure(const PiecewiseFn& f, const PiecewiseFn& g);

enum class Regularity { C0Kink, C1Only, C2 };

std::string to_string(Regularity r);

// A certified convex piecewise polynomial: value-continuous, one-sided
// slopes nondecreasing, segment-interior second derivative >= -tol.
struct ConvexFn {
    PiecewiseFn fn;
    std::vector<Regularity> regularity;   // one per interior breakpoint

    double eval(double x, int order = 0) const { return fn.eval(x, order); }
    double left() const { return fn.left(); }
    double right() const { return fn.right(); }

    bool has_kinks() const;
    // Interior breakpoints that are not C2 points.
    std::vector<int> non_c2_breakpoints() const;
};

// Certify convexity. tol_conv/tol_cont <= 0 selects the defaults
// (1e-10 x curvature scale, 1e-9 x value scale). Errors: NotContinuous,
// NotConvex, both naming the witnessing breakpoint or segment.
ConvexFn check_convex(const PiecewiseFn& f, double tol_conv = -1.0, double tol_cont = -1.0);

// max(|f'(left+)|, |f'(right-)|); exact for convex f by slope monotonicity.
double lipschitz_const(const ConvexFn& f, double lo, double hi);

// f(x1) - f(x0) - f'(x0+)(x1 - x0); nonnegative for convex f.
double tangent_gap(const ConvexFn& f, double x0, double x1);

} // namespace c2convex
