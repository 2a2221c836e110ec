#include "c2convex/poly.hpp"

#include "c2convex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace c2convex {

double Poly::operator()(double t) const {
    double v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v;
}

double Poly::eval(double t, int order) const {
    if (order == 0) return (*this)(t);
    Poly p = *this;
    for (int k = 0; k < order; ++k) p = p.derivative();
    return p(t);
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly{};
    std::vector<double> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
    return Poly(std::move(d));
}

Poly Poly::antiderivative(double constant_term) const {
    std::vector<double> a(c_.size() + 1);
    a[0] = constant_term;
    for (size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
    return Poly(std::move(a));
}

Poly Poly::shifted(double dt) const {
    if (c_.empty() || dt == 0.0) return *this;
    // Horner-style Taylor shift: repeated synthetic division by (t - (-dt)).
    std::vector<double> b = c_;
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n - 1; ++k) {
        for (int i = n - 2; i >= k; --i) b[i] += dt * b[i + 1];
    }
    return Poly(std::move(b));
}

Poly Poly::reflected(double len) const {
    Poly q = shifted(len);
    std::vector<double> b = q.coeffs();
    for (size_t i = 1; i < b.size(); i += 2) b[i] = -b[i];
    return Poly(std::move(b));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator*(double s) const {
    std::vector<double> r = c_;
    for (double& v : r) v *= s;
    return Poly(std::move(r));
}

double Poly::max_abs_coeff() const {
    double m = 0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

void Poly::normalize(double scale) {
    double m = scale > 0 ? scale : max_abs_coeff();
    const double thresh = 1e-14 * m;
    for (double& v : c_) {
        if (std::abs(v) < thresh) v = 0.0;
    }
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

Poly Poly::normalized(double scale) const {
    Poly p = *this;
    p.normalize(scale);
    return p;
}

bool Poly::is_negligible(double scale) const {
    const double thresh = 1e-14 * scale;
    for (double v : c_) {
        if (std::abs(v) > thresh) return false;
    }
    return true;
}

namespace {

constexpr int kGridPoints = 64;
constexpr double kRootTol = 1e-12;

// Safeguarded Newton inside a sign-change bracket.
double refine_root(const Poly& p, const Poly& dp, double lo, double hi,
                   double flo, double fhi) {
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        if (hi - lo < kRootTol) break;
        double fx = p(x);
        if (fx == 0.0) return x;
        if ((fx < 0) == (flo < 0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        double d = dp(x);
        double xn = (d != 0.0) ? x - fx / d : lo - 1;   // force bisection
        if (xn <= lo || xn >= hi) xn = 0.5 * (lo + hi);
        x = xn;
    }
    return x;
}

} // namespace

std::vector<double> poly_roots_on(const Poly& p, double lo, double hi) {
    std::vector<double> roots;
    if (p.degree() < 1 || hi <= lo) {
        // Constant: either no roots or identically zero (caller's concern).
        return roots;
    }
    if (p.degree() == 1) {
        double r = -p.coeffs()[0] / p.coeffs()[1];
        if (r >= lo && r <= hi) roots.push_back(r);
        return roots;
    }
    const Poly dp = p.derivative();
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double prev_x = lo, prev_f = p(lo);
    if (prev_f == 0.0) roots.push_back(lo);
    for (int k = 1; k <= kGridPoints; ++k) {
        // Chebyshev points plus the right endpoint.
        double x = (k == kGridPoints)
                       ? hi
                       : mid - half * std::cos(std::numbers::pi * k / kGridPoints);
        double f = p(x);
        if (f == 0.0) {
            roots.push_back(x);
        } else if ((f < 0) != (prev_f < 0) && prev_f != 0.0) {
            roots.push_back(refine_root(p, dp, prev_x, x, prev_f, f));
        }
        prev_x = x;
        prev_f = f;
    }
    return roots;
}

namespace {

template <typename Cmp>
double poly_extremum_on(const Poly& p, double lo, double hi, Cmp better) {
    double best = p(lo);
    double v = p(hi);
    if (better(v, best)) best = v;
    for (double r : poly_roots_on(p.derivative(), lo, hi)) {
        v = p(r);
        if (better(v, best)) best = v;
    }
    // Grid values as safety against clustered critical points.
    const int n = 16;
    for (int k = 1; k < n; ++k) {
        v = p(lo + (hi - lo) * k / n);
        if (better(v, best)) best = v;
    }
    return best;
}

} // namespace

double poly_min_on(const Poly& p, double lo, double hi) {
    return poly_extremum_on(p, lo, hi, [](double a, double b) { return a < b; });
}

double poly_max_on(const Poly& p, double lo, double hi) {
    return poly_extremum_on(p, lo, hi, [](double a, double b) { return a > b; });
}

double poly_max_abs_on(const Poly& p, double lo, double hi) {
    return std::max(std::abs(poly_min_on(p, lo, hi)), std::abs(poly_max_on(p, lo, hi)));
}

} // namespace c2convex
