#pragma once

#include <vector>

namespace c2convex {

// Polynomial in a local coordinate t = x - segment_left, coefficients in
// ascending degree. Inputs are capped at degree 6; intermediate results
// (antiderivatives of degree-6 data) may go higher.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) {}
    static Poly constant(double v) { return Poly({v}); }

    const std::vector<double>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool empty() const { return c_.empty(); }

    double operator()(double t) const;
    double eval(double t, int order) const;

    Poly derivative() const;
    Poly antiderivative(double constant_term = 0.0) const;

    // p(t + dt) as a polynomial in t (Taylor shift).
    Poly shifted(double dt) const;
    // p(len - t) as a polynomial in t.
    Poly reflected(double len) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(double s) const;

    double max_abs_coeff() const;

    // Zero coefficients below 1e-14 x max|coeff| (or below 1e-14 x scale if
    // scale > 0) and trim trailing zeros.
    void normalize(double scale = 0.0);
    Poly normalized(double scale = 0.0) const;

    bool is_zero() const { return c_.empty(); }
    // True when all coefficients are within 1e-14 x scale of zero.
    bool is_negligible(double scale) const;

private:
    std::vector<double> c_;
};

// Real roots of p in [lo, hi], found by sign-change bracketing on a 64-point
// Chebyshev grid followed by a bisection/Newton hybrid to 1e-12.
std::vector<double> poly_roots_on(const Poly& p, double lo, double hi);

double poly_min_on(const Poly& p, double lo, double hi);
double poly_max_on(const Poly& p, double lo, double hi);
double poly_max_abs_on(const Poly& p, double lo, double hi);

} // namespace c2convex
