#include "c2convex/bridge.hpp"

#include "c2convex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace c2convex {

double BumpDensity::eval(double t) const {
    if (nodes.empty()) return 0.0;
    if (t <= nodes.front().first) return nodes.front().second;
    if (t >= nodes.back().first) return nodes.back().second;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (t <= nodes[i + 1].first) {
            double t0 = nodes[i].first, t1 = nodes[i + 1].first;
            double h0 = nodes[i].second, h1 = nodes[i + 1].second;
            return h0 + (h1 - h0) * (t - t0) / (t1 - t0);
        }
    }
    return nodes.back().second;
}

PiecewiseFn BumpDensity::to_piecewise() const {
    std::vector<double> xs;
    std::vector<Poly> segs;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        double t0 = nodes[i].first, t1 = nodes[i + 1].first;
        if (!(t1 > t0)) continue;
        xs.push_back(t0);
        double h0 = nodes[i].second, h1 = nodes[i + 1].second;
        segs.push_back(Poly({h0, (h1 - h0) / (t1 - t0)}));
    }
    xs.push_back(nodes.back().first);
    return PiecewiseFn(std::move(xs), std::move(segs));
}

std::pair<double, double> BumpDensity::computed_moments() const {
    double mass_sum = 0, moment_sum = 0;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        double t0 = nodes[i].first, t1 = nodes[i + 1].first;
        double h0 = nodes[i].second, h1 = nodes[i + 1].second;
        double dt = t1 - t0;
        mass_sum += 0.5 * (h0 + h1) * dt;
        moment_sum += dt * (h0 * (2 * t0 + t1) + h1 * (t0 + 2 * t1)) / 6.0;
    }
    return {mass_sum, moment_sum};
}

BumpDensity BumpDensity::zero(double c) {
    BumpDensity d;
    d.c = c;
    d.nodes = {{0.0, 0.0}, {c, 0.0}};
    d.mass = 0;
    d.centroid = 0.5 * c;
    d.height = 0;
    return d;
}

std::string to_string(BridgeKind k) {
    switch (k) {
        case BridgeKind::Linear: return "Linear";
        case BridgeKind::Triangle: return "Triangle";
        case BridgeKind::EdgeRamped: return "EdgeRamped";
    }
    return "?";
}

Feasibility feasibility(double c, const EndpointData& left, const EndpointData& right) {
    if (!(c > 0)) fail("OutOfDomain", "feasibility needs c > 0");
    const double P = right.slope - left.slope;
    const double D = right.value - left.value - left.slope * c;
    // Zero decisions at a few tens of ulps of the operands: P and D are
    // plain two/three-term differences, so their round-off is O(eps x scale).
    // A fatter threshold misreads strictly feasible data on the short
    // intervals the shrink loop probes, where D ~ curvature x r^2.
    const double ulp = 32.0 * std::numeric_limits<double>::epsilon();
    const double tolP = ulp * (std::abs(left.slope) + std::abs(right.slope));
    const double tolD =
        ulp * (std::abs(left.value) + std::abs(right.value) + std::abs(left.slope) * c);
    const double tolC = 1e-12 * std::max(std::abs(P) / c,
                                         std::abs(left.curvature) + std::abs(right.curvature));
    const bool curv_zero = left.curvature <= tolC && right.curvature <= tolC;

    Feasibility r;
    if (P < -tolP) {
        r.kind = Feasibility::Kind::Infeasible;
        r.reason = "NegativeMass";
        return r;
    }
    if (std::abs(P) <= tolP && std::abs(D) <= tolD && curv_zero) {
        r.kind = Feasibility::Kind::Linear;
        return r;
    }
    if (std::abs(D) <= tolD) {
        r.kind = Feasibility::Kind::Infeasible;
        r.reason = "OnTangent";
        return r;
    }
    if (D < 0) {
        r.kind = Feasibility::Kind::Infeasible;
        r.reason = "BelowTangent";
        return r;
    }
    if (D >= P * c - tolD) {
        r.kind = Feasibility::Kind::Infeasible;
        r.reason = "AboveSecant";
        return r;
    }
    r.kind = Feasibility::Kind::Strict;
    r.P = P;
    r.tau = c - D / P;
    return r;
}

BumpDensity triangle_bump(double c, double P, double tau) {
    if (!(tau > 0) || !(tau < c))
        fail("InfeasibleCentroid", "tau = " + std::to_string(tau) +
                                       " outside (0, " + std::to_string(c) + ")");
    if (!(P > 0)) fail("InfeasibleCentroid", "mass must be positive");
    BumpDensity d;
    d.c = c;
    d.mass = P;
    d.centroid = tau;
    if (tau <= 0.5 * c) {
        d.height = P / tau;
        d.nodes = {{0.0, 0.0}, {tau, d.height}, {2.0 * tau, 0.0}};
        if (2.0 * tau < c) d.nodes.push_back({c, 0.0});
    } else {
        d.height = P / (c - tau);
        d.nodes = {{0.0, 0.0}};
        if (2.0 * tau - c > 0) d.nodes.push_back({2.0 * tau - c, 0.0});
        d.nodes.push_back({tau, d.height});
        d.nodes.push_back({c, 0.0});
    }
    return d;
}

std::optional<BumpDensity> try_edge_ramped(double c, double A, double B,
                                           double P, double tau, double w) {
    if (!(w > 0) || w > 0.25 * c) fail("InvalidArgument", "ramp width must be in (0, c/4]");
    if (A < 0 || B < 0) fail("NegativeDensity", "endpoint curvatures must be >= 0");
    if (A == 0 && B == 0) return triangle_bump(c, P, tau);

    const double ramp_mass = 0.5 * w * (A + B);
    const double ramp_moment = A * w * w / 6.0 + 0.5 * B * w * (c - w / 3.0);
    const double P_r = P - ramp_mass;
    if (!(P_r > 0)) return std::nullopt;
    const double tau_r = (P * tau - ramp_moment) / P_r;
    if (!(tau_r > 0) || !(tau_r < c)) return std::nullopt;

    BumpDensity tri = triangle_bump(c, P_r, tau_r);

    auto ramps = [&](double t) {
        double v = 0;
        if (t < w) v += A * (1.0 - t / w);
        if (t > c - w) v += B * (t - (c - w)) / w;
        return v;
    };
    std::vector<double> ts = {0.0, w, c - w, c};
    for (const auto& n : tri.nodes) ts.push_back(n.first);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [&](double a, double b) { return std::abs(a - b) < 1e-15 * c; }),
             ts.end());

    BumpDensity d;
    d.c = c;
    d.mass = P;
    d.centroid = tau;
    d.height = 0;
    for (double t : ts) {
        double v = ramps(t) + tri.eval(t);
        d.nodes.push_back({t, v});
        d.height = std::max(d.height, v);
    }
    return d;
}

BumpDensity edge_ramped_density(double c, double A, double B,
                                double P, double tau, double w) {
    auto d = try_edge_ramped(c, A, B, P, tau, w);
    if (!d)
        fail("ResidualInfeasible",
             "residual mass/centroid infeasible at ramp width w = " + std::to_string(w));
    return *d;
}

Bridge second_antiderivative(const BumpDensity& density, const EndpointData& left,
                             BridgeKind kind) {
    std::vector<double> xs;
    std::vector<Poly> segs;
    double value = left.value, slope = left.slope;
    for (size_t i = 0; i + 1 < density.nodes.size(); ++i) {
        double t0 = density.nodes[i].first, t1 = density.nodes[i + 1].first;
        if (!(t1 > t0)) continue;
        double h0 = density.nodes[i].second, h1 = density.nodes[i + 1].second;
        Poly h({h0, (h1 - h0) / (t1 - t0)});
        Poly u = h.antiderivative(slope).antiderivative(value);
        u.normalize();   // drop exact-zero high-order terms on flat stretches
        xs.push_back(left.x + t0);
        segs.push_back(u);
        value = u(t1 - t0);
        slope = u.eval(t1 - t0, 1);
    }
    if (segs.empty()) {
        xs.push_back(left.x);
        segs.push_back(Poly({left.value, left.slope}));
    }
    xs.push_back(left.x + density.c);

    Bridge b;
    b.fn = PiecewiseFn(std::move(xs), std::move(segs));
    b.left = left;
    b.right = {left.x + density.c, value, slope, density.nodes.back().second};
    b.density = density;
    b.kind = kind;
    return b;
}

namespace {

// sup over (0, len] of F(x)/x with F the running antiderivative of h from
// its left endpoint; the x -> 0+ limit h(left+) is a candidate.
double one_sided_sup_average(const PiecewiseFn& h) {
    double best = h.eval(h.left());
    double running = 0;   // integral of h over [left, x_j]
    for (int j = 0; j < h.segment_count(); ++j) {
        const double x0 = h.xs[j] - h.left();
        const double len = h.xs[j + 1] - h.xs[j];
        Poly A = h.segs[j].antiderivative(0.0);
        auto average = [&](double t) { return (running + A(t)) / (x0 + t); };
        if (x0 > 0) best = std::max(best, average(0.0));
        best = std::max(best, average(len));
        // Critical points of F(x)/x: roots of x F'(x) - F(x), i.e. of
        // (x0 + t) h(t) - (running + A(t)) in the local coordinate.
        std::vector<double> th(h.segs[j].coeffs().size() + 1, 0.0);
        for (size_t i = 0; i < h.segs[j].coeffs().size(); ++i)
            th[i + 1] = h.segs[j].coeffs()[i];
        Poly G = Poly(std::move(th)) + h.segs[j] * x0 - A - Poly::constant(running);
        for (double r : poly_roots_on(G, 0.0, len)) {
            if (x0 + r > 0) best = std::max(best, average(r));
        }
        running += A(len);
    }
    return best;
}

PiecewiseFn reversed(const PiecewiseFn& h) {
    std::vector<double> xs;
    std::vector<Poly> segs;
    xs.reserve(h.xs.size());
    segs.reserve(h.segs.size());
    for (auto it = h.xs.rbegin(); it != h.xs.rend(); ++it)
        xs.push_back(h.left() + (h.right() - *it));
    for (int j = h.segment_count() - 1; j >= 0; --j)
        segs.push_back(h.segs[j].reflected(h.xs[j + 1] - h.xs[j]));
    return PiecewiseFn(std::move(xs), std::move(segs));
}

} // namespace

double epsilon_bound(const PiecewiseFn& h) {
    for (int j = 0; j < h.segment_count(); ++j) {
        double m = poly_min_on(h.segs[j], 0, h.xs[j + 1] - h.xs[j]);
        if (m < -1e-12 * h.value_scale())
            fail("NegativeDensity", "h < 0 on segment " + std::to_string(j));
    }
    return std::max(one_sided_sup_average(h), one_sided_sup_average(reversed(h)));
}

double epsilon_bound(const BumpDensity& h) { return epsilon_bound(h.to_piecewise()); }

std::pair<double, double> height_certificate(const BumpDensity& density, double eps) {
    const double bound = 4.0 * eps;
    if (density.height > bound * (1.0 + 1e-9) + 1e-300)
        fail("CertificateViolated", "height " + std::to_string(density.height) +
                                        " > 4*eps = " + std::to_string(bound));
    return {density.height, bound};
}

Bridge hermite_bridge(const EndpointData& left, const EndpointData& right) {
    const double c = right.x - left.x;
    if (!(c > 0)) fail("OutOfDomain", "hermite_bridge needs left.x < right.x");
    Feasibility feas = feasibility(c, left, right);
    if (feas.kind == Feasibility::Kind::Infeasible)
        fail("Infeasible", feas.reason + " for interval of length " + std::to_string(c));

    Bridge b;
    if (feas.kind == Feasibility::Kind::Linear) {
        b = second_antiderivative(BumpDensity::zero(c), left, BridgeKind::Linear);
    } else {
        const double tolC = 1e-12 * std::max(feas.P / c,
                                             std::abs(left.curvature) + std::abs(right.curvature));
        if (left.curvature <= tolC && right.curvature <= tolC) {
            b = second_antiderivative(triangle_bump(c, feas.P, feas.tau), left,
                                      BridgeKind::Triangle);
        } else {
            double w = 0.25 * c;
            std::optional<BumpDensity> d;
            for (int k = 0; k < 60 && !d; ++k) {
                d = try_edge_ramped(c, left.curvature, right.curvature, feas.P, feas.tau, w);
                if (!d) w *= 0.5;
            }
            if (!d) fail("ShrinkExhausted", "ramp width underflow; data at feasibility boundary");
            b = second_antiderivative(*d, left, BridgeKind::EdgeRamped);
        }
    }

    const double vscale = std::max({1.0, std::abs(right.value)});
    const double sscale = std::max({1.0, std::abs(right.slope)});
    const double cscale = std::max({1.0, std::abs(right.curvature)});
    if (std::abs(b.right.value - right.value) > 1e-11 * vscale ||
        std::abs(b.right.slope - right.slope) > 1e-11 * sscale ||
        std::abs(b.right.curvature - right.curvature) > 1e-11 * cscale)
        fail("Internal", "bridge endpoint residual exceeds tolerance");
    return b;
}

ConvexFn glue(const ConvexFn& f, double beta, double gamma, double eps) {
    const double b1 = beta - eps, g1 = gamma + eps;
    if (!(f.left() < b1) || !(b1 < g1) || !(g1 < f.right()))
        fail("OutOfDomain", "glue buffer outside the domain interior");
    const double tol = 1e-12 * std::max(1.0, f.fn.span());
    for (int idx : f.non_c2_breakpoints()) {
        double x = f.fn.xs[idx];
        if (x <= b1 + tol || x >= g1 - tol)
            fail("NotC2OnFlanks", "non-C2 breakpoint at x = " + std::to_string(x));
    }

    const double gap = tangent_gap(f, b1, g1);
    const double gap_tol =
        1e-12 * (std::abs(f.eval(b1)) + std::abs(f.eval(g1)) +
                 std::abs(f.fn.eval(b1, 1)) * (g1 - b1) + 1.0e-300);
    if (gap < -std::max(gap_tol, 1e-12))
        fail("TangentGapNegative", "gap = " + std::to_string(gap));
    if (gap <= std::max(gap_tol, 1e-12)) {
        // Equality: f must be linear on [b1, g1]; keep f.
        PiecewiseFn tangent({b1, g1},
                            {Poly({f.eval(b1), f.fn.eval(b1, 1)})});
        if (sup_abs_diff(f.fn, splice(f.fn, tangent), b1, g1) >
            1e-10 * f.fn.value_scale())
            fail("Internal", "zero tangent gap but f not linear in between");
        return f;
    }

    EndpointData left{b1, f.eval(b1), f.fn.eval(b1, 1), std::max(0.0, f.fn.eval(b1, 2))};
    EndpointData right{g1, f.eval(g1), f.fn.eval(g1, 1), std::max(0.0, f.fn.eval(g1, 2))};
    Bridge br = hermite_bridge(left, right);
    return check_convex(splice(f.fn, br.fn));
}

std::pair<double, double> squeeze_check(const ConvexFn& f, const ConvexFn& g,
                                        double alpha, double beta, double gamma) {
    if (!(alpha < beta) || !(beta < gamma)) fail("OutOfDomain", "need alpha < beta < gamma");
    const double scale = std::max(f.fn.value_scale(), g.fn.value_scale());
    for (double x : {alpha, beta, gamma}) {
        if (std::abs(f.eval(x) - g.eval(x)) > 1e-9 * scale)
            fail("AgreementPreconditionFailed",
                 "f and g differ at x = " + std::to_string(x));
    }
    double sup = sup_abs_diff(f.fn, g.fn, alpha, gamma);
    double bound = 2.0 * lipschitz_const(f, alpha, gamma) * (gamma - alpha);
    if (sup > bound * (1.0 + 1e-9))
        fail("SqueezeViolated", "sup " + std::to_string(sup) + " exceeds bound " +
                                    std::to_string(bound));
    return {sup, bound};
}

} // namespace c2convex
