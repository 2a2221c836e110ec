#include "c2convex/fixtures.hpp"

#include "c2convex/errors.hpp"

namespace c2convex::fixtures {

PiecewiseFn flat_middle() {
    // x^2 on [-1,0] in t = x+1 is (t-1)^2; (x-1)^2 on [1,2] in t = x-1 is t^2.
    return PiecewiseFn({-1.0, 0.0, 1.0, 2.0},
                       {Poly({1.0, -2.0, 1.0}), Poly({0.0}), Poly({0.0, 0.0, 1.0})});
}

PiecewiseFn abs_fn() {
    return PiecewiseFn({-1.0, 0.0, 1.0}, {Poly({1.0, -1.0}), Poly({0.0, 1.0})});
}

PiecewiseFn quadratic() {
    return PiecewiseFn({0.0, 1.0}, {Poly({0.0, 0.0, 1.0})});
}

PiecewiseFn nonconvex() {
    return PiecewiseFn({0.0, 1.0, 2.0}, {Poly({0.0, 1.0}), Poly({1.0, 0.5})});
}

std::vector<std::string> names() {
    return {"flat-middle", "abs", "quadratic", "nonconvex"};
}

PiecewiseFn by_name(const std::string& name) {
    if (name == "flat-middle") return flat_middle();
    if (name == "abs") return abs_fn();
    if (name == "quadratic") return quadratic();
    if (name == "nonconvex") return nonconvex();
    fail("UnknownFixture", name);
}

} // namespace c2convex::fixtures
