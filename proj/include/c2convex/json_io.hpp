#pragma once

#include "c2convex/piecewise.hpp"
#include "c2convex/pipeline.hpp"

#include <string>

namespace c2convex {

// Function format:
// {"domain":[a,b],"breakpoints":[...],"segments":[{"coeffs":[...]},...]}
// Doubles round-trip bit-exactly (shortest-repr decimal).
std::string to_json(const PiecewiseFn& f);
PiecewiseFn piecewise_from_json(const std::string& text);

std::string to_json(const ApproxReport& report);

PiecewiseFn load_function(const std::string& path);
void save_function(const PiecewiseFn& f, const std::string& path);
void save_report(const ApproxReport& report, const std::string& path);

// CSV with columns x,f,g,fpp,gpp at a uniform grid plus all knots of f and g.
void write_plot_csv(const PiecewiseFn& f, const PiecewiseFn& g,
                    const std::string& path, int grid_points = 2000);

} // namespace c2convex
