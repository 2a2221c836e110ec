#pragma once

#include "c2convex/piecewise.hpp"

#include <utility>
#include <vector>

namespace c2convex {

// A slope kink and the interval on which its Dirac curvature mass was
// spread out as a box density.
struct KinkRecord {
    double location = 0;
    double jump = 0;     // f'(x+) - f'(x-) > 0
    double radius = 0;   // half-width of the replacement interval
};

// C1,1 pre-pass: replace each slope jump J at x0 by the constant density
// J/(2*delta) on [x0-delta, x0+delta] added to f''. The box has the same
// mass and centroid as the Dirac, so the result matches f and f' at
// x0 +/- delta exactly and equals f outside the kink intervals.
// delta = budget/(2K) capped at 0.49 x distance to the nearest other
// breakpoint or domain endpoint. Errors: BudgetTooTight, NotConvex.
std::pair<ConvexFn, std::vector<KinkRecord>>
round_kinks(const ConvexFn& f, double budget);

} // namespace c2convex
