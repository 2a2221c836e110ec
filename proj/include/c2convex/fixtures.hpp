#pragma once

#include "c2convex/piecewise.hpp"

#include <string>
#include <vector>

namespace c2convex::fixtures {

// x^2 on [-1,0], 0 on [0,1], (x-1)^2 on [1,2]: convex, C1,1, not C2, and the
// middle span admits no convex C2 replacement.
PiecewiseFn flat_middle();

// |x| on [-1, 1].
PiecewiseFn abs_fn();

// x^2 on [0, 1], single segment.
PiecewiseFn quadratic();

// {x on [0,1], 0.5x on [1,2]}: slope decreases at 1.
PiecewiseFn nonconvex();

std::vector<std::string> names();
PiecewiseFn by_name(const std::string& name);

} // namespace c2convex::fixtures
