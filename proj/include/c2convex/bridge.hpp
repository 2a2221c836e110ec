#pragma once

#include "c2convex/piecewise.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace c2convex {

// Nonnegative piecewise-linear second-derivative profile on [0, c], with its
// prescribed mass P, centroid tau and height H recorded.
struct BumpDensity {
    double c = 0;
    std::vector<std::pair<double, double>> nodes;   // (t, h), t ascending
    double mass = 0;       // P
    double centroid = 0;   // tau
    double height = 0;     // H = max h

    double eval(double t) const;
    PiecewiseFn to_piecewise() const;

    // Closed-form trapezoid moments of the node list: (integral h, integral t*h).
    std::pair<double, double> computed_moments() const;

    static BumpDensity zero(double c);
};

struct EndpointData {
    double x = 0;
    double value = 0;
    double slope = 0;
    double curvature = 0;   // >= 0
};

enum class BridgeKind { Linear, Triangle, EdgeRamped };

std::string to_string(BridgeKind k);

// Convex C2 piecewise cubic on [left.x, right.x] with fn'' = density.
struct Bridge {
    PiecewiseFn fn;
    EndpointData left, right;
    BumpDensity density;
    BridgeKind kind = BridgeKind::Linear;
};

struct Feasibility {
    enum class Kind { Linear, Strict, Infeasible };
    Kind kind = Kind::Infeasible;
    double P = 0;
    double tau = 0;
    std::string reason;   // NegativeMass | OnTangent | BelowTangent | AboveSecant

    bool feasible() const { return kind != Kind::Infeasible; }
};

// Decide whether a convex C2 interpolant of the endpoint data exists across
// an interval of length c. P = slope difference, D = rise above the left
// tangent; Strict requires P > 0 and 0 < D < P*c, with tau = c - D/P.
Feasibility feasibility(double c, const EndpointData& left, const EndpointData& right);

// Isosceles triangle density of area P and centroid tau on [0, c]; the base
// touches 0 when tau <= c/2 and touches c when tau >= c/2.
BumpDensity triangle_bump(double c, double P, double tau);

// Linear end ramps of width w carrying the endpoint curvatures A, B plus a
// residual triangle for the remaining mass/centroid. Nullopt when the
// residual is infeasible (caller shrinks w).
std::optional<BumpDensity> try_edge_ramped(double c, double A, double B,
                                           double P, double tau, double w);

// Throwing wrapper: error code ResidualInfeasible.
BumpDensity edge_ramped_density(double c, double A, double B,
                                double P, double tau, double w);

// Piecewise cubic u with u(left.x) = value, u'(left.x) = slope, u'' = density.
// Closed-form segmentwise integration.
Bridge second_antiderivative(const BumpDensity& density, const EndpointData& left,
                             BridgeKind kind);

// The eps functional: max of the two one-sided sup-averages of h over (0, c],
// with the x -> 0+ limits h(0+) and h(c-) included as candidates.
double epsilon_bound(const PiecewiseFn& h);
double epsilon_bound(const BumpDensity& h);

// Height bound certificate: asserts height <= 4*eps (error code
// CertificateViolated) and returns (height, 4*eps).
std::pair<double, double> height_certificate(const BumpDensity& density, double eps);

// Dispatch on feasibility; edge-ramped widths start at c/4 and halve until
// the residual clears (max 60 halvings). Errors: Infeasible, ShrinkExhausted.
Bridge hermite_bridge(const EndpointData& left, const EndpointData& right);

// Gluing: replace f on [beta-eps, gamma+eps] with a Hermite
// bridge when the tangent condition holds strictly; return f unchanged when
// it holds with equality (f linear in between).
ConvexFn glue(const ConvexFn& f, double beta, double gamma, double eps);

// (sup |f-g| on [alpha,gamma], 2*L*(gamma-alpha)); f, g must agree at the
// three points. Asserts sup <= bound.
std::pair<double, double> squeeze_check(const ConvexFn& f, const ConvexFn& g,
                                        double alpha, double beta, double gamma);

} // namespace c2convex
