#include "c2convex/pipeline.hpp"

#include "c2convex/errors.hpp"

#include <algorithm>
#include <cmath>

namespace c2convex {

PiecewiseFn constant_profile(double lo, double hi, double value) {
    return PiecewiseFn({lo, hi}, {Poly::constant(value)});
}

ToleranceConfig make_config(double lo, double hi, double budget, double profile_value) {
    ToleranceConfig cfg;
    cfg.measure_budget = budget;
    cfg.error_profile = constant_profile(lo, hi, profile_value);
    return cfg;
}

namespace {

double profile_min(const PiecewiseFn& prof, double lo, double hi) {
    lo = std::max(lo, prof.left());
    hi = std::min(hi, prof.right());
    double m = prof.eval(lo);
    for (int j = 0; j < prof.segment_count(); ++j) {
        double sl = std::max(prof.xs[j], lo), sr = std::min(prof.xs[j + 1], hi);
        if (!(sl < sr)) continue;
        m = std::min(m, poly_min_on(prof.segs[j], sl - prof.xs[j], sr - prof.xs[j]));
    }
    return m;
}

EndpointData endpoint_at(const PiecewiseFn& f, double x) {
    return {x, f.eval(x), f.eval(x, 1), std::max(0.0, f.eval(x, 2))};
}

struct BuiltInterval {
    CorrectionInterval info;
    Bridge bridge;
    double eps = 0;
};

// One correction interval around a non-C2 breakpoint: half-lengths walk the
// quantized ladder r = r_geo * s^k, starting at the budget cap and shrinking
// until the bridge is feasible and the exact sup error meets the profile.
BuiltInterval build_interval(const ConvexFn& fw, const PiecewiseFn& f_orig,
                             const ToleranceConfig& cfg, double x0,
                             double budget_cap, int extra_shrinks) {
    double gap = std::min(x0 - fw.left(), fw.right() - x0);
    for (double bp : fw.fn.xs)
        if (bp != x0) gap = std::min(gap, std::abs(bp - x0));
    if (!(gap > 0)) fail("ShrinkExhausted", "no room around breakpoint x = " + std::to_string(x0));

    double r_geo = 0.49 * gap;
    double hood_lo = std::max(fw.left(), x0 - gap);
    double hood_hi = std::min(fw.right(), x0 + gap);
    double L = lipschitz_const(fw, hood_lo, hood_hi);
    double eps_loc = profile_min(cfg.error_profile, hood_lo, hood_hi);
    if (L > 0) r_geo = std::min(r_geo, eps_loc / (8.0 * L));

    const double s = cfg.shrink_factor;
    int k = 0;
    while (budget_cap > 0 && r_geo * std::pow(s, k) > budget_cap && k < cfg.max_shrink) ++k;
    k += extra_shrinks;

    for (int tries = 0; tries <= cfg.max_shrink; ++tries, ++k) {
        double r = r_geo * std::pow(s, k);
        double a = x0 - r, b = x0 + r;
        if (!(a < x0 && x0 < b)) break;   // r underflowed the breakpoint's ulp
        Feasibility feas = feasibility(b - a, endpoint_at(fw.fn, a), endpoint_at(fw.fn, b));
        if (!feas.feasible()) continue;
        Bridge br;
        try {
            br = hermite_bridge(endpoint_at(fw.fn, a), endpoint_at(fw.fn, b));
        } catch (const Error&) {
            continue;
        }
        double sup = sup_abs_diff(f_orig, br.fn, a, b);
        if (sup > profile_min(cfg.error_profile, a, b)) continue;

        BuiltInterval out;
        out.bridge = std::move(br);
        out.info.center = x0;
        out.info.a = a;
        out.info.b = b;
        out.info.kind = out.bridge.kind;
        out.info.height = out.bridge.density.height;
        out.info.sup_error = sup;
        out.info.shrink_count = tries;
        PiecewiseFn h = fw.fn.restricted(a, b).derivative().derivative();
        out.eps = epsilon_bound(h);
        out.info.eps = out.eps;
        return out;
    }
    fail("ShrinkExhausted", "breakpoint x = " + std::to_string(x0) +
                                " is at the feasibility boundary");
}

// Kink rounding with the error profile enforced by shrinking the rounding
// budget; returns the working function and its kink records.
std::pair<ConvexFn, std::vector<KinkRecord>>
round_kinks_within_profile(const ConvexFn& f, const ToleranceConfig& cfg, double budget) {
    if (!f.has_kinks()) return {f, {}};
    for (int tries = 0; tries <= cfg.max_shrink; ++tries) {
        std::pair<ConvexFn, std::vector<KinkRecord>> rounded;
        try {
            rounded = round_kinks(f, budget);
        } catch (const Error& e) {
            // The starting budget was representable; running out of room
            // mid-shrink means the profile cannot be met.
            if (tries > 0 && e.code() == "BudgetTooTight")
                fail("ShrinkExhausted", "kink rounding cannot meet the error profile");
            throw;
        }
        auto& [fw, kinks] = rounded;
        bool ok = true;
        for (const KinkRecord& k : kinks) {
            double lo = k.location - k.radius, hi = k.location + k.radius;
            // Half the local profile: the bridge stage needs headroom on the
            // intervals it opens around the rounded kinks.
            if (sup_abs_diff(f.fn, fw.fn, lo, hi) >
                0.5 * profile_min(cfg.error_profile, lo, hi)) {
                ok = false;
                break;
            }
        }
        if (ok) return {fw, kinks};
        budget *= cfg.shrink_factor;
    }
    fail("ShrinkExhausted", "kink rounding cannot meet the error profile");
}

struct CoreResult {
    PiecewiseFn g;
    std::vector<CorrectionInterval> intervals;
    std::vector<std::pair<double, double>> certificates;
};

// Bridge every non-C2 breakpoint of fw; f_orig is the comparison target for
// the profile. budget is the total allowance for bridge spans.
CoreResult approximate_core(const ConvexFn& fw, const PiecewiseFn& f_orig,
                            const ToleranceConfig& cfg, double budget,
                            int extra_shrinks) {
    CoreResult res;
    std::vector<int> bad = fw.non_c2_breakpoints();
    const int K = static_cast<int>(bad.size());
    res.g = fw.fn;
    for (int idx : bad) {
        double x0 = fw.fn.xs[idx];
        BuiltInterval bi =
            build_interval(fw, f_orig, cfg, x0, K > 0 ? budget / (4.0 * K) : 0, extra_shrinks);
        if (bi.info.kind == BridgeKind::Triangle)
            res.certificates.push_back(height_certificate(bi.bridge.density, bi.eps));
        else if (bi.info.kind == BridgeKind::EdgeRamped)
            res.certificates.push_back({bi.bridge.density.height, 4.0 * bi.eps});
        res.g = splice(res.g, bi.bridge.fn);
        res.intervals.push_back(bi.info);
    }
    return res;
}

} // namespace

std::pair<ConvexFn, ApproxReport>
approximate(const ConvexFn& f, const ToleranceConfig& cfg) {
    if (!(cfg.measure_budget > 0)) fail("InvalidArgument", "measure budget must be positive");
    if (profile_min(cfg.error_profile, f.left(), f.right()) <= 0)
        fail("InvalidArgument", "error profile must be positive on the domain");

    auto [fw, kinks] = round_kinks_within_profile(f, cfg, 0.5 * cfg.measure_budget);

    for (int guard = 0; guard <= cfg.max_shrink; ++guard) {
        CoreResult core = approximate_core(fw, f.fn, cfg, 0.5 * cfg.measure_budget, guard);
        if (disagreement_measure(f.fn, core.g) >= cfg.measure_budget) continue;
        ConvexFn g = check_convex(core.g, cfg.tol_conv, cfg.tol_cont);
        ApproxReport report = verify(f, g, cfg);
        report.intervals = std::move(core.intervals);
        report.certificates = std::move(core.certificates);
        report.kinks = kinks;
        return {std::move(g), std::move(report)};
    }
    fail("ShrinkExhausted", "could not meet the measure budget");
}

std::pair<ConvexFn, ApproxReport>
approximate_graded(const ConvexFn& f, const ToleranceConfig& cfg, int cells) {
    if (cells < 1) fail("InvalidArgument", "cells must be >= 1");
    if (!(cfg.measure_budget > 0)) fail("InvalidArgument", "measure budget must be positive");

    auto [fw, kinks] = round_kinks_within_profile(f, cfg, 0.25 * cfg.measure_budget);

    const double lo = f.left(), hi = f.right(), len = hi - lo;
    const double cell_len = len / cells;

    // Cell boundaries, nudged off non-C2 breakpoints of the working function.
    std::vector<double> alpha(cells + 1);
    std::vector<double> bad_xs;
    for (int idx : fw.non_c2_breakpoints()) bad_xs.push_back(fw.fn.xs[idx]);
    for (int i = 0; i <= cells; ++i) {
        double a = lo + i * cell_len;
        if (i > 0 && i < cells) {
            for (double shift : {0.0, 0.05, -0.05, 0.11, -0.11, 0.17, -0.17}) {
                double cand = a + shift * cell_len;
                bool clear = true;
                for (double b : bad_xs)
                    if (std::abs(b - cand) < 0.02 * cell_len) clear = false;
                if (clear) {
                    a = cand;
                    break;
                }
            }
        }
        alpha[i] = a;
    }

    // Per-cell budgets: even split capped by the graded rule (profile over the
    // extended neighborhood scaled by the local Lipschitz constant, and the
    // neighbor cell widths).
    PiecewiseFn g = fw.fn;
    std::vector<CorrectionInterval> intervals;
    std::vector<std::pair<double, double>> certificates;
    for (int i = 0; i < cells; ++i) {
        double n_lo = alpha[std::max(i - 1, 0)];
        double n_hi = alpha[std::min(i + 2, cells)];
        double cap = cfg.measure_budget / (2.0 * cells);
        double L = lipschitz_const(f, n_lo, n_hi);
        if (L > 0) cap = std::min(cap, profile_min(cfg.error_profile, n_lo, n_hi) / (4.0 * L));
        if (i - 1 >= 0) cap = std::min(cap, alpha[i] - alpha[i - 1]);
        if (i + 2 <= cells) cap = std::min(cap, alpha[i + 2] - alpha[i + 1]);

        ConvexFn cell = check_convex(fw.fn.restricted(alpha[i], alpha[i + 1]),
                                     cfg.tol_conv, cfg.tol_cont);
        CoreResult core = approximate_core(cell, f.fn.restricted(alpha[i], alpha[i + 1]),
                                           cfg, 2.0 * cap, 0);
        if (core.g.segment_count() > 0 && !core.intervals.empty()) g = splice(g, core.g);
        intervals.insert(intervals.end(), core.intervals.begin(), core.intervals.end());
        certificates.insert(certificates.end(), core.certificates.begin(),
                            core.certificates.end());
    }

    // Fuse seams with glue on small buffers.
    ConvexFn gc = check_convex(g, cfg.tol_conv, cfg.tol_cont);
    const double seam_allow = cells > 1 ? cfg.measure_budget / (8.0 * (cells - 1)) : 0;
    for (int i = 1; i < cells; ++i) {
        double e = std::min(seam_allow / 2.0, 0.05 * cell_len);
        bool glued = false;
        for (int tries = 0; tries <= cfg.max_shrink && e > 0; ++tries) {
            ConvexFn cand;
            try {
                cand = glue(gc, alpha[i], alpha[i], e);
            } catch (const Error&) {
                e *= cfg.shrink_factor;
                continue;
            }
            if (sup_abs_diff(f.fn, cand.fn, alpha[i] - e, alpha[i] + e) <=
                profile_min(cfg.error_profile, alpha[i] - e, alpha[i] + e)) {
                gc = std::move(cand);
                glued = true;
                break;
            }
            e *= cfg.shrink_factor;
        }
        if (!glued) fail("GlueInfeasible", "seam at x = " + std::to_string(alpha[i]));
    }

    ApproxReport report = verify(f, gc, cfg);
    report.intervals = std::move(intervals);
    report.certificates = std::move(certificates);
    report.kinks = kinks;
    return {std::move(gc), std::move(report)};
}

ApproxReport verify(const ConvexFn& f, const ConvexFn& g, const ToleranceConfig& cfg) {
    ApproxReport rep;
    const PiecewiseFn& gf = g.fn;
    const double vscale = gf.value_scale();
    const double sscale = std::max(gf.derivative().value_scale(), 1.0);
    const double cscale = gf.curvature_scale();

    for (int order = 0; order <= 2; ++order) {
        double m = 0;
        for (double r : gf.continuity_residuals(order)) m = std::max(m, r);
        if (order == 0) rep.residual_c0 = m;
        else if (order == 1) rep.residual_c1 = m;
        else rep.residual_c2 = m;
    }
    if (rep.residual_c0 > cfg.tol_cont * vscale ||
        rep.residual_c1 > cfg.tol_cont * sscale ||
        rep.residual_c2 > cfg.tol_cont * cscale)
        fail("C2ResidualExceeded",
             "residuals " + std::to_string(rep.residual_c0) + ", " +
                 std::to_string(rep.residual_c1) + ", " + std::to_string(rep.residual_c2));

    rep.min_curvature = 0;
    for (int j = 0; j < gf.segment_count(); ++j) {
        Poly p2 = gf.segs[j].derivative().derivative();
        double m = p2.empty() ? 0.0 : poly_min_on(p2, 0, gf.xs[j + 1] - gf.xs[j]);
        rep.min_curvature = std::min(rep.min_curvature, m);
    }
    if (rep.min_curvature < -cfg.tol_conv * cscale)
        fail("NotConvexOutput", "min g'' = " + std::to_string(rep.min_curvature));

    rep.disagreement = disagreement_measure(f.fn, gf);
    if (cfg.measure_budget > 0 && rep.disagreement >= cfg.measure_budget)
        fail("MeasureExceeded", "disagreement " + std::to_string(rep.disagreement) +
                                    " >= budget " + std::to_string(cfg.measure_budget));

    rep.sup_error_global = sup_abs_diff(f.fn, gf);
    if (cfg.error_profile.segment_count() > 0) {
        // Exact per-segment check of |f-g| <= eps(x) on the common refinement.
        std::vector<double> xs = merged_breakpoints(f.fn, gf);
        for (double x : cfg.error_profile.xs) {
            if (x > xs.front() && x < xs.back()) {
                xs.push_back(x);
            }
        }
        std::sort(xs.begin(), xs.end());
        const double pscale = cfg.error_profile.value_scale();
        for (size_t j = 0; j + 1 < xs.size(); ++j) {
            if (!(xs[j + 1] - xs[j] > 1e-13 * gf.span())) continue;
            double l = xs[j], r = xs[j + 1];
            double mid = 0.5 * (l + r);
            int jf = f.fn.segment_index(mid);
            int jg = gf.segment_index(mid);
            int jp = cfg.error_profile.segment_index(mid);
            Poly d = f.fn.segs[jf].shifted(l - f.fn.xs[jf]) -
                     gf.segs[jg].shifted(l - gf.xs[jg]);
            Poly e = cfg.error_profile.segs[jp].shifted(l - cfg.error_profile.xs[jp]);
            double worst = std::max(poly_max_on(d - e, 0, r - l),
                                    poly_max_on((d * -1.0) - e, 0, r - l));
            if (worst > 1e-12 * pscale)
                fail("ProfileExceeded", "|f-g| exceeds the error profile near x = " +
                                            std::to_string(mid));
        }
    }
    return rep;
}

} // namespace c2convex
