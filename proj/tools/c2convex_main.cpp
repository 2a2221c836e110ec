#include "c2convex/bridge.hpp"
#include "c2convex/errors.hpp"
#include "c2convex/fixtures.hpp"
#include "c2convex/json_io.hpp"
#include "c2convex/oracle.hpp"
#include "c2convex/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace c2convex;

namespace {

int exit_code_for(const Error& e) {
    const std::string& c = e.code();
    if (c == "IOError") return 4;
    if (c == "ShrinkExhausted") return 3;
    if (c == "Infeasible" || c == "ResidualInfeasible" || c == "InfeasibleCentroid" ||
        c == "GlueInfeasible")
        return 5;
    return 2;
}

PiecewiseFn load_input(const std::string& arg) {
    if (arg.rfind("demo:", 0) == 0) return fixtures::by_name(arg.substr(5));
    return load_function(arg);
}

PiecewiseFn parse_profile(const std::string& arg, double lo, double hi) {
    if (arg.rfind("const:", 0) == 0)
        return constant_profile(lo, hi, std::stod(arg.substr(6)));
    if (arg.rfind("file:", 0) == 0) return load_function(arg.substr(5));
    fail("InvalidArgument", "profile must be const:V or file:path");
}

bool parse_triple(const std::string& s, double& a, double& b, double& c) {
    std::istringstream ss(s);
    char c1 = 0, c2 = 0;
    return static_cast<bool>(ss >> a >> c1 >> b >> c2 >> c) && c1 == ',' && c2 == ',';
}

void print_bridge(const Bridge& br, bool as_json) {
    if (as_json) {
        nlohmann::json j;
        j["kind"] = to_string(br.kind);
        j["P"] = br.density.mass;
        j["tau"] = br.density.centroid;
        j["H"] = br.density.height;
        j["fn"] = nlohmann::json::parse(to_json(br.fn));
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::cout << "kind: " << to_string(br.kind) << "\n"
              << "P: " << br.density.mass << "  tau: " << br.density.centroid
              << "  H: " << br.density.height << "\n"
              << "knots:";
    for (double x : br.fn.xs) std::cout << ' ' << x;
    std::cout << "\ncoeffs:";
    for (const Poly& p : br.fn.segs) {
        std::cout << " [";
        for (size_t i = 0; i < p.coeffs().size(); ++i)
            std::cout << (i ? " " : "") << p.coeffs()[i];
        std::cout << "]";
    }
    std::cout << '\n';
}

void write_figure1_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("IOError", "cannot write " + path);
    out << "case,t,h\n";
    for (const char* name : {"left", "right"}) {
        BumpDensity d = (std::string(name) == "left") ? triangle_bump(2.0, 1.0, 0.5)
                                                      : triangle_bump(2.0, 1.0, 1.5);
        for (const auto& [t, h] : d.nodes) out << name << ',' << t << ',' << h << '\n';
    }
}

void write_figure2_csv(const std::string& path) {
    // Squeeze region for x^2 with agreement points 0, 0.5, 1: the graph of
    // any convex interpolant lies between the outer secant and the chords.
    std::ofstream out(path);
    if (!out) fail("IOError", "cannot write " + path);
    out << "x,f,lower,upper\n";
    const double alpha = 0, beta = 0.5, gamma = 1;
    auto f = [](double x) { return x * x; };
    for (int i = 0; i <= 200; ++i) {
        double x = alpha + (gamma - alpha) * i / 200;
        double upper = f(alpha) + (f(gamma) - f(alpha)) / (gamma - alpha) * (x - alpha);
        double chord_l = f(alpha) + (f(beta) - f(alpha)) / (beta - alpha) * (x - alpha);
        double chord_r = f(gamma) + (f(gamma) - f(beta)) / (gamma - beta) * (x - gamma);
        double lower = std::max(chord_l, chord_r);
        out << x << ',' << f(x) << ',' << lower << ',' << upper << '\n';
    }
}

int run_approximate_like(const std::string& input, double budget,
                         const std::string& profile_spec, int graded,
                         const std::string& output, const std::string& report_path,
                         const std::string& plot) {
    PiecewiseFn raw = load_input(input);
    ConvexFn f = check_convex(raw);
    ToleranceConfig cfg;
    cfg.measure_budget = budget;
    cfg.error_profile = parse_profile(profile_spec, raw.left(), raw.right());

    auto [g, report] = graded > 0 ? approximate_graded(f, cfg, graded) : approximate(f, cfg);
    if (!output.empty()) save_function(g.fn, output);
    if (!report_path.empty()) save_report(report, report_path);
    if (!plot.empty()) write_plot_csv(f.fn, g.fn, plot);
    std::cout << "disagreement: " << report.disagreement
              << "  sup_error: " << report.sup_error_global
              << "  intervals: " << report.intervals.size() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"C2 convex Lusin approximation of convex piecewise polynomials"};
    app.require_subcommand(1);

    // approximate
    auto* cmd_approx = app.add_subcommand("approximate", "approximate a convex function");
    std::string in_path, profile_spec = "const:0.01", out_path, report_path, plot_path;
    double budget = 0.1;
    int graded = 0;
    cmd_approx->add_option("--input", in_path)->required();
    cmd_approx->add_option("--measure-budget", budget)->required();
    cmd_approx->add_option("--profile", profile_spec);
    cmd_approx->add_option("--graded", graded);
    cmd_approx->add_option("--output", out_path);
    cmd_approx->add_option("--report", report_path);
    cmd_approx->add_option("--plot", plot_path);

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "check approximation contracts");
    std::string vf, vg, vprofile;
    double vbudget = 0;
    bool deep = false;
    cmd_verify->add_option("--f", vf)->required();
    cmd_verify->add_option("--g", vg)->required();
    cmd_verify->add_option("--measure-budget", vbudget);
    cmd_verify->add_option("--profile", vprofile);
    cmd_verify->add_flag("--deep", deep);

    // bridge
    auto* cmd_bridge = app.add_subcommand("bridge", "convex C2 Hermite bridge");
    double bc = 1.0;
    std::string left_s, right_s;
    bool as_json = false;
    cmd_bridge->add_option("--c", bc)->required();
    cmd_bridge->add_option("--left", left_s)->required();
    cmd_bridge->add_option("--right", right_s)->required();
    cmd_bridge->add_flag("--json", as_json);

    // bump
    auto* cmd_bump = app.add_subcommand("bump", "triangle density for (c, P, tau)");
    double uc = 1, um = 1, ut = 0.5;
    bool bump_json = false;
    cmd_bump->add_option("--c", uc)->required();
    cmd_bump->add_option("--mass", um)->required();
    cmd_bump->add_option("--tau", ut)->required();
    cmd_bump->add_flag("--json", bump_json);

    // glue
    auto* cmd_glue = app.add_subcommand("glue", "bridge across a buffer interval");
    std::string gin, gout;
    double gbeta = 0, ggamma = 0, geps = 0;
    cmd_glue->add_option("--input", gin)->required();
    cmd_glue->add_option("--beta", gbeta)->required();
    cmd_glue->add_option("--gamma", ggamma)->required();
    cmd_glue->add_option("--eps", geps)->required();
    cmd_glue->add_option("--output", gout);

    // demo
    auto* cmd_demo = app.add_subcommand("demo", "built-in fixtures and figure data");
    std::string demo_name, demo_out, demo_plot, demo_profile = "const:0.05",
                demo_report, demo_gout;
    double demo_budget = 0;
    cmd_demo->add_option("name", demo_name)->required();
    cmd_demo->add_option("--output", demo_out);
    cmd_demo->add_option("--plot", demo_plot);
    cmd_demo->add_option("--measure-budget", demo_budget);
    cmd_demo->add_option("--profile", demo_profile);
    cmd_demo->add_option("--report", demo_report);
    cmd_demo->add_option("--g-output", demo_gout);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*cmd_approx)
            return run_approximate_like(in_path, budget, profile_spec, graded, out_path,
                                        report_path, plot_path);

        if (*cmd_verify) {
            PiecewiseFn fr = load_input(vf), gr = load_input(vg);
            ConvexFn f = check_convex(fr);
            ConvexFn g = check_convex(gr);
            ToleranceConfig cfg;
            cfg.measure_budget = vbudget;
            if (!vprofile.empty())
                cfg.error_profile = parse_profile(vprofile, fr.left(), fr.right());
            ApproxReport report = verify(f, g, cfg);
            std::cout << to_json(report) << '\n';
            if (deep) {
                oracle::OracleConfig ocfg;
                if (const char* s = std::getenv("C2CONVEX_SEED"))
                    ocfg.seed = std::strtoull(s, nullptr, 10);
                auto rep = oracle::sample_checks([&](double x) { return f.eval(x); },
                                                 [&](double x) { return g.eval(x); },
                                                 fr.left(), fr.right(), ocfg);
                std::cout << "deep: convexity_violations=" << rep.convexity_violations
                          << " grid_sup=" << rep.grid_sup
                          << " mc_measure=" << rep.mc_measure << '\n';
                if (rep.convexity_violations > 0)
                    fail("NotConvexOutput", "grid convexity violations found");
            }
            return 0;
        }

        if (*cmd_bridge) {
            double lv, ls, lk, rv, rs, rk;
            if (!parse_triple(left_s, lv, ls, lk) || !parse_triple(right_s, rv, rs, rk))
                fail("InvalidArgument", "endpoint data must be v,s,k");
            EndpointData left{0, lv, ls, lk}, right{bc, rv, rs, rk};
            Feasibility feas = feasibility(bc, left, right);
            if (feas.kind == Feasibility::Kind::Infeasible) {
                std::cout << "Infeasible\n";
                std::cerr << feas.reason << '\n';
                return 5;
            }
            std::cout << (feas.kind == Feasibility::Kind::Linear
                              ? std::string("Linear")
                              : "Strict P=" + std::to_string(feas.P) +
                                    " tau=" + std::to_string(feas.tau))
                      << '\n';
            print_bridge(hermite_bridge(left, right), as_json);
            return 0;
        }

        if (*cmd_bump) {
            BumpDensity d = triangle_bump(uc, um, ut);
            double eps = epsilon_bound(d);
            auto cert = height_certificate(d, eps);
            if (bump_json) {
                nlohmann::json j;
                j["nodes"] = d.nodes;
                j["P"] = d.mass;
                j["tau"] = d.centroid;
                j["H"] = d.height;
                j["eps"] = eps;
                j["certificate"] = {cert.first, cert.second};
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "H=" << d.height << " eps=" << eps << " certificate "
                          << cert.first << " <= " << cert.second << "\nnodes:";
                for (const auto& [t, h] : d.nodes) std::cout << " (" << t << "," << h << ")";
                std::cout << '\n';
            }
            return 0;
        }

        if (*cmd_glue) {
            ConvexFn f = check_convex(load_input(gin));
            ConvexFn g = glue(f, gbeta, ggamma, geps);
            if (!gout.empty()) save_function(g.fn, gout);
            std::cout << "glued: disagreement " << disagreement_measure(f.fn, g.fn) << '\n';
            return 0;
        }

        if (*cmd_demo) {
            if (demo_name == "figure1") {
                if (demo_plot.empty()) fail("InvalidArgument", "figure1 needs --plot");
                write_figure1_csv(demo_plot);
                return 0;
            }
            if (demo_name == "figure2") {
                if (demo_plot.empty()) fail("InvalidArgument", "figure2 needs --plot");
                write_figure2_csv(demo_plot);
                return 0;
            }
            PiecewiseFn f = fixtures::by_name(demo_name);
            if (!demo_out.empty()) save_function(f, demo_out);
            if (demo_budget > 0)
                return run_approximate_like("demo:" + demo_name, demo_budget, demo_profile,
                                            0, demo_gout, demo_report, demo_plot);
            if (demo_out.empty()) std::cout << to_json(f) << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 2;
}
