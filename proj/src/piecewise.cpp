#include "c2convex/piecewise.hpp"

#include "c2convex/errors.hpp"

#include <algorithm>
#include <cmath>

namespace c2convex {

namespace {

double snap_tol(double span) { return 1e-12 * std::max(1.0, span); }

} // namespace

PiecewiseFn::PiecewiseFn(std::vector<double> breakpoints, std::vector<Poly> segments)
    : xs(std::move(breakpoints)), segs(std::move(segments)) {
    if (xs.size() < 2 || segs.size() + 1 != xs.size())
        fail("InvalidFunction", "need m+1 breakpoints for m segments");
    for (size_t j = 0; j + 1 < xs.size(); ++j) {
        if (!(xs[j] < xs[j + 1]))
            fail("InvalidFunction", "breakpoints must be strictly increasing");
    }
}

int PiecewiseFn::segment_index(double x) const {
    const double tol = snap_tol(span());
    if (x < xs.front() - tol || x > xs.back() + tol)
        fail("OutOfDomain", "x = " + std::to_string(x) + " outside [" +
                                std::to_string(xs.front()) + ", " +
                                std::to_string(xs.back()) + "]");
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    int j = static_cast<int>(it - xs.begin()) - 1;
    return std::clamp(j, 0, segment_count() - 1);
}

double PiecewiseFn::eval(double x, int order) const {
    int j = segment_index(x);
    return segs[j].eval(x - xs[j], order);
}

double PiecewiseFn::eval_left(double x, int order) const {
    const double tol = snap_tol(span());
    if (x < xs.front() - tol || x > xs.back() + tol) fail("OutOfDomain", "eval_left");
    auto it = std::lower_bound(xs.begin(), xs.end(), x - tol);
    int j = static_cast<int>(it - xs.begin());
    if (j < static_cast<int>(xs.size()) && std::abs(xs[j] - x) <= tol) {
        // x is a breakpoint: use the segment ending here.
        j = std::max(j - 1, 0);
    } else {
        j = std::clamp(j - 1, 0, segment_count() - 1);
    }
    j = std::min(j, segment_count() - 1);
    return segs[j].eval(x - xs[j], order);
}

PiecewiseFn PiecewiseFn::derivative() const {
    std::vector<Poly> d;
    d.reserve(segs.size());
    for (const Poly& p : segs) d.push_back(p.derivative());
    PiecewiseFn r;
    r.xs = xs;
    r.segs = std::move(d);
    return r;
}

double PiecewiseFn::value_scale() const {
    double m = 0;
    for (int j = 0; j < segment_count(); ++j)
        m = std::max(m, poly_max_abs_on(segs[j], 0, xs[j + 1] - xs[j]));
    return std::max(m, 1.0);
}

double PiecewiseFn::curvature_scale() const {
    double m = 0;
    for (int j = 0; j < segment_count(); ++j) {
        Poly p2 = segs[j].derivative().derivative();
        m = std::max(m, poly_max_abs_on(p2, 0, xs[j + 1] - xs[j]));
    }
    return std::max(m, 1.0);
}

std::vector<double> PiecewiseFn::continuity_residuals(int order) const {
    std::vector<double> r;
    r.reserve(xs.size() >= 2 ? xs.size() - 2 : 0);
    for (size_t j = 1; j + 1 < xs.size(); ++j) {
        double left = segs[j - 1].eval(xs[j] - xs[j - 1], order);
        double right = segs[j].eval(0.0, order);
        r.push_back(std::abs(left - right));
    }
    return r;
}

void PiecewiseFn::split_at(double x) {
    const double tol = snap_tol(span());
    for (double bp : xs)
        if (std::abs(bp - x) <= tol) return;
    if (x <= xs.front() || x >= xs.back()) fail("OutOfDomain", "split_at");
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    int j = static_cast<int>(it - xs.begin()) - 1;
    Poly right_part = segs[j].shifted(x - xs[j]);
    segs.insert(segs.begin() + j + 1, std::move(right_part));
    xs.insert(xs.begin() + j + 1, x);
}

PiecewiseFn PiecewiseFn::refined(const std::vector<double>& new_xs) const {
    PiecewiseFn r;
    r.xs = new_xs;
    r.segs.reserve(new_xs.size() - 1);
    for (size_t j = 0; j + 1 < new_xs.size(); ++j) {
        double mid = 0.5 * (new_xs[j] + new_xs[j + 1]);
        int src = segment_index(mid);
        r.segs.push_back(segs[src].shifted(new_xs[j] - xs[src]));
    }
    return r;
}

PiecewiseFn PiecewiseFn::restricted(double lo, double hi) const {
    const double tol = snap_tol(span());
    if (lo < xs.front() - tol || hi > xs.back() + tol || !(lo < hi))
        fail("OutOfDomain", "restricted");
    std::vector<double> nxs;
    nxs.push_back(lo);
    for (double bp : xs)
        if (bp > lo + tol && bp < hi - tol) nxs.push_back(bp);
    nxs.push_back(hi);
    return refined(nxs);
}

std::vector<double> merged_breakpoints(const PiecewiseFn& f, const PiecewiseFn& g) {
    const double tol = snap_tol(std::max(f.span(), g.span()));
    if (std::abs(f.left() - g.left()) > tol || std::abs(f.right() - g.right()) > tol)
        fail("DomainMismatch", "functions live on different intervals");
    std::vector<double> all = f.xs;
    all.insert(all.end(), g.xs.begin(), g.xs.end());
    std::sort(all.begin(), all.end());
    std::vector<double> merged;
    for (double x : all) {
        if (merged.empty() || x - merged.back() > tol) merged.push_back(x);
    }
    merged.front() = f.left();
    merged.back() = f.right();
    return merged;
}

PiecewiseFn splice(const PiecewiseFn& base, const PiecewiseFn& patch) {
    const double lo = patch.left(), hi = patch.right();
    const double tol = snap_tol(base.span());
    if (lo < base.left() - tol || hi > base.right() + tol)
        fail("OutOfDomain", "patch outside base domain");
    PiecewiseFn work = base;
    if (lo > work.left() + tol) work.split_at(lo);
    if (hi < work.right() - tol) work.split_at(hi);

    std::vector<double> xs;
    std::vector<Poly> segs;
    for (size_t j = 0; j + 1 < work.xs.size(); ++j) {
        if (0.5 * (work.xs[j] + work.xs[j + 1]) >= lo) break;
        xs.push_back(work.xs[j]);
        segs.push_back(work.segs[j]);
    }
    for (size_t j = 0; j + 1 < patch.xs.size(); ++j) {
        xs.push_back(patch.xs[j]);
        segs.push_back(patch.segs[j]);
    }
    bool tail = false;
    for (size_t j = 0; j + 1 < work.xs.size(); ++j) {
        if (0.5 * (work.xs[j] + work.xs[j + 1]) <= hi) continue;
        if (tail) {
            xs.push_back(work.xs[j]);
            segs.push_back(work.segs[j]);
        } else {
            xs.push_back(hi);
            segs.push_back(work.segs[j].shifted(hi - work.xs[j]));
            tail = true;
        }
    }
    xs.push_back(tail ? work.right() : hi);
    return PiecewiseFn(std::move(xs), std::move(segs));
}

namespace {

// Difference polynomial of f and g on the refined segment [l, r], in the
// local coordinate t = x - l.
Poly diff_on(const PiecewiseFn& f, const PiecewiseFn& g, double l, double r) {
    double mid = 0.5 * (l + r);
    int jf = f.segment_index(mid);
    int jg = g.segment_index(mid);
    return f.segs[jf].shifted(l - f.xs[jf]) - g.segs[jg].shifted(l - g.xs[jg]);
}

} // namespace

double sup_abs_diff(const PiecewiseFn& f, const PiecewiseFn& g, double lo, double hi) {
    const double tol = snap_tol(std::max(f.span(), g.span()));
    std::vector<double> all;
    all.push_back(lo);
    for (double x : f.xs)
        if (x > lo + tol && x < hi - tol) all.push_back(x);
    for (double x : g.xs)
        if (x > lo + tol && x < hi - tol) all.push_back(x);
    all.push_back(hi);
    std::sort(all.begin(), all.end());
    std::vector<double> pts;
    for (double x : all)
        if (pts.empty() || x - pts.back() > tol) pts.push_back(x);
    if (pts.size() < 2) pts = {lo, hi};

    double sup = 0;
    for (size_t j = 0; j + 1 < pts.size(); ++j) {
        Poly d = diff_on(f, g, pts[j], pts[j + 1]);
        sup = std::max(sup, poly_max_abs_on(d, 0, pts[j + 1] - pts[j]));
    }
    return sup;
}

double sup_abs_diff(const PiecewiseFn& f, const PiecewiseFn& g) {
    std::vector<double> xs = merged_breakpoints(f, g);
    return sup_abs_diff(f, g, xs.front(), xs.back());
}

double disagreement_measure(const PiecewiseFn& f, const PiecewiseFn& g) {
    std::vector<double> xs = merged_breakpoints(f, g);
    double total = 0;
    for (size_t j = 0; j + 1 < xs.size(); ++j) {
        double mid = 0.5 * (xs[j] + xs[j + 1]);
        int jf = f.segment_index(mid);
        int jg = g.segment_index(mid);
        const Poly& pf = f.segs[jf].shifted(xs[j] - f.xs[jf]);
        const Poly& pg = g.segs[jg].shifted(xs[j] - g.xs[jg]);
        double scale = std::max({pf.max_abs_coeff(), pg.max_abs_coeff(), 1e-300});
        Poly d = pf - pg;
        if (!d.is_negligible(scale)) total += xs[j + 1] - xs[j];
    }
    return total;
}

std::string to_string(Regularity r) {
    switch (r) {
        case Regularity::C0Kink: return "C0_kink";
        case Regularity::C1Only: return "C1_only";
        case Regularity::C2: return "C2";
    }
    return "?";
}

bool ConvexFn::has_kinks() const {
    for (Regularity r : regularity)
        if (r == Regularity::C0Kink) return true;
    return false;
}

std::vector<int> ConvexFn::non_c2_breakpoints() const {
    std::vector<int> idx;
    for (size_t j = 0; j < regularity.size(); ++j)
        if (regularity[j] != Regularity::C2) idx.push_back(static_cast<int>(j) + 1);
    return idx;
}

ConvexFn check_convex(const PiecewiseFn& f, double tol_conv, double tol_cont) {
    const double vscale = f.value_scale();
    const double cscale = f.curvature_scale();
    const double slope_scale = std::max(f.derivative().value_scale(), 1.0);
    if (tol_cont <= 0) tol_cont = 1e-9;
    if (tol_conv <= 0) tol_conv = 1e-10;
    const double cont_tol = tol_cont * vscale;
    const double conv_tol = tol_conv * cscale;
    const double slope_tol = tol_cont * slope_scale;

    ConvexFn out;
    out.fn = f;

    auto residuals0 = f.continuity_residuals(0);
    for (size_t j = 0; j < residuals0.size(); ++j) {
        if (residuals0[j] > cont_tol)
            fail("NotContinuous", "value jump " + std::to_string(residuals0[j]) +
                                      " at breakpoint x = " + std::to_string(f.xs[j + 1]));
    }

    // Slope monotonicity across breakpoints and within segments (f'' >= -tol).
    for (int j = 0; j < f.segment_count(); ++j) {
        Poly p2 = f.segs[j].derivative().derivative();
        double m = p2.empty() ? 0.0 : poly_min_on(p2, 0, f.xs[j + 1] - f.xs[j]);
        if (m < -conv_tol)
            fail("NotConvex", "second derivative min " + std::to_string(m) +
                                  " on segment " + std::to_string(j));
    }
    for (size_t j = 1; j + 1 < f.xs.size(); ++j) {
        double sl = f.segs[j - 1].eval(f.xs[j] - f.xs[j - 1], 1);
        double sr = f.segs[j].eval(0.0, 1);
        if (sl > sr + slope_tol)
            fail("NotConvex", "slope decreases " + std::to_string(sl) + " -> " +
                                  std::to_string(sr) + " at breakpoint x = " +
                                  std::to_string(f.xs[j]));
        double cl = f.segs[j - 1].eval(f.xs[j] - f.xs[j - 1], 2);
        double cr = f.segs[j].eval(0.0, 2);
        if (sr - sl > slope_tol) out.regularity.push_back(Regularity::C0Kink);
        else if (std::abs(cr - cl) > conv_tol) out.regularity.push_back(Regularity::C1Only);
        else out.regularity.push_back(Regularity::C2);
    }
    return out;
}

double lipschitz_const(const ConvexFn& f, double lo, double hi) {
    const double tol = snap_tol(f.fn.span());
    if (lo < f.left() - tol || hi > f.right() + tol || !(lo < hi))
        fail("OutOfDomain", "lipschitz_const");
    double sl = f.fn.eval(lo, 1);                // right slope at lo
    double sr = f.fn.eval_left(hi, 1);           // left slope at hi
    return std::max(std::abs(sl), std::abs(sr));
}

double tangent_gap(const ConvexFn& f, double x0, double x1) {
    if (!(x0 < x1)) fail("OutOfDomain", "tangent_gap needs x0 < x1");
    return f.eval(x1) - f.eval(x0) - f.fn.eval(x0, 1) * (x1 - x0);
}

} // namespace c2convex
