#include "c2convex/json_io.hpp"

#include "c2convex/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace c2convex {

using nlohmann::json;

std::string to_json(const PiecewiseFn& f) {
    json j;
    j["domain"] = {f.left(), f.right()};
    j["breakpoints"] = f.xs;
    j["segments"] = json::array();
    for (const Poly& p : f.segs) j["segments"].push_back({{"coeffs", p.coeffs()}});
    return j.dump();
}

PiecewiseFn piecewise_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail("ParseError", e.what());
    }
    if (!j.contains("breakpoints") || !j.contains("segments"))
        fail("ParseError", "missing breakpoints or segments");
    std::vector<double> xs = j["breakpoints"].get<std::vector<double>>();
    for (double x : xs)
        if (!std::isfinite(x))
            fail("ParseError", "breakpoints must be finite (bounded closed domain required)");
    std::vector<Poly> segs;
    for (const auto& s : j["segments"]) {
        auto coeffs = s.at("coeffs").get<std::vector<double>>();
        if (coeffs.size() > 7) fail("ParseError", "input segment degree exceeds 6");
        segs.emplace_back(std::move(coeffs));
    }
    PiecewiseFn f(std::move(xs), std::move(segs));
    if (j.contains("domain")) {
        auto d = j["domain"].get<std::vector<double>>();
        if (d.size() != 2 || d[0] != f.left() || d[1] != f.right())
            fail("ParseError", "domain does not match breakpoints");
    }
    return f;
}

std::string to_json(const ApproxReport& r) {
    json j;
    j["disagreement"] = r.disagreement;
    j["sup_error"] = r.sup_error_global;
    j["min_curvature"] = r.min_curvature;
    j["residuals"] = {{"c0", r.residual_c0}, {"c1", r.residual_c1}, {"c2", r.residual_c2}};
    j["intervals"] = json::array();
    for (const CorrectionInterval& iv : r.intervals) {
        j["intervals"].push_back({{"center", iv.center},
                                  {"a", iv.a},
                                  {"b", iv.b},
                                  {"kind", to_string(iv.kind)},
                                  {"H", iv.height},
                                  {"eps", iv.eps},
                                  {"sup_err", iv.sup_error},
                                  {"shrinks", iv.shrink_count}});
    }
    j["kinks"] = json::array();
    for (const KinkRecord& k : r.kinks)
        j["kinks"].push_back({{"location", k.location}, {"jump", k.jump}, {"radius", k.radius}});
    j["certificates"] = json::array();
    for (const auto& [h, bound] : r.certificates)
        j["certificates"].push_back({h, bound});
    return j.dump(2);
}

PiecewiseFn load_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IOError", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return piecewise_from_json(ss.str());
}

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail("IOError", "cannot write " + path);
    out << text << '\n';
    if (!out) fail("IOError", "write failed for " + path);
}

} // namespace

void save_function(const PiecewiseFn& f, const std::string& path) {
    write_text(path, to_json(f));
}

void save_report(const ApproxReport& report, const std::string& path) {
    write_text(path, to_json(report));
}

void write_plot_csv(const PiecewiseFn& f, const PiecewiseFn& g,
                    const std::string& path, int grid_points) {
    std::vector<double> xs;
    for (int i = 0; i <= grid_points; ++i)
        xs.push_back(f.left() + f.span() * i / grid_points);
    xs.insert(xs.end(), f.xs.begin(), f.xs.end());
    xs.insert(xs.end(), g.xs.begin(), g.xs.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::ofstream out(path);
    if (!out) fail("IOError", "cannot write " + path);
    out << "x,f,g,fpp,gpp\n";
    auto num = [](double v) { return json(v).dump(); };   // shortest-repr decimal
    for (double x : xs) {
        out << num(x) << ',' << num(f.eval(x)) << ',' << num(g.eval(x)) << ','
            << num(f.eval(x, 2)) << ',' << num(g.eval(x, 2)) << '\n';
    }
    if (!out) fail("IOError", "write failed for " + path);
}

} // namespace c2convex
