#include "c2convex/regularize.hpp"

#include "c2convex/errors.hpp"

#include <algorithm>
#include <cmath>

namespace c2convex {

std::pair<ConvexFn, std::vector<KinkRecord>>
round_kinks(const ConvexFn& f, double budget) {
    std::vector<double> kink_xs;
    for (size_t j = 0; j < f.regularity.size(); ++j)
        if (f.regularity[j] == Regularity::C0Kink) kink_xs.push_back(f.fn.xs[j + 1]);

    if (kink_xs.empty()) return {f, {}};
    if (budget <= 0) fail("BudgetTooTight", "nonpositive kink budget");

    const int K = static_cast<int>(kink_xs.size());
    std::vector<KinkRecord> records;
    records.reserve(K);
    for (double x0 : kink_xs) {
        double dist = f.fn.span();
        for (double bp : f.fn.xs)
            if (bp != x0) dist = std::min(dist, std::abs(bp - x0));
        double delta = std::min(budget / (2.0 * K), 0.49 * dist);
        // Below the breakpoint-snapping threshold the split points collapse
        // onto the kink itself; the interval is not representable.
        if (!(delta > 1e-11 * std::max(1.0, f.fn.span())))
            fail("BudgetTooTight", "kink at x = " + std::to_string(x0) +
                                       " has no room for a replacement interval");
        double jump = f.fn.eval(x0, 1) - f.fn.eval_left(x0, 1);
        records.push_back({x0, jump, delta});
    }

    PiecewiseFn g = f.fn;
    for (const KinkRecord& k : records) {
        g.split_at(k.location - k.radius);
        g.split_at(k.location + k.radius);
    }
    for (const KinkRecord& k : records) {
        const double lo = k.location - k.radius;
        const double hi = k.location + k.radius;
        const double box = k.jump / (2.0 * k.radius);
        // Rebuild as the second antiderivative of f'' + box, chained from
        // f's value and slope at the interval's left end.
        double value = g.eval(lo);
        double slope = g.eval(lo, 1);
        for (size_t j = 0; j + 1 < g.xs.size(); ++j) {
            double mid = 0.5 * (g.xs[j] + g.xs[j + 1]);
            if (mid < lo || mid > hi) continue;
            Poly curv = g.segs[j].derivative().derivative() + Poly::constant(box);
            Poly rebuilt = curv.antiderivative(slope).antiderivative(value);
            double len = g.xs[j + 1] - g.xs[j];
            value = rebuilt(len);
            slope = rebuilt.eval(len, 1);
            g.segs[j] = std::move(rebuilt);
        }
    }

    ConvexFn out = check_convex(g);
    if (out.has_kinks()) fail("Internal", "kink survived rounding");
    return {out, records};
}

} // namespace c2convex
