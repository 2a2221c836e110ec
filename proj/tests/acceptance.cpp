// Acceptance suite: one PASS/FAIL line per criterion. argv[1] = CLI binary.
#include "c2convex/bridge.hpp"
#include "c2convex/errors.hpp"
#include "c2convex/fixtures.hpp"
#include "c2convex/json_io.hpp"
#include "c2convex/oracle.hpp"
#include "c2convex/pipeline.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace c2convex;
namespace fs = std::filesystem;

namespace {

std::string cli_path;
fs::path tmp_dir;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_cli(const std::string& args) {
    std::string cmd = "'" + cli_path + "' " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) return -1;
    return WEXITSTATUS(rc);
}

// Random certified convex piecewise polynomial, <= 20 segments, degree <= 4,
// mixed C0 / C1-only / C2 interior breakpoints.
ConvexFn random_convex(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nseg(2, 14);
    std::uniform_real_distribution<double> ulen(0.15, 0.6), u01(0.0, 1.0),
        ua(0.0, 2.0), ustart(-2.0, 2.0);
    int n = nseg(rng);
    std::vector<double> xs{ustart(rng)};
    for (int i = 0; i < n; ++i) xs.push_back(xs.back() + ulen(rng));

    double v = ustart(rng), s = ustart(rng);
    std::vector<Poly> segs;
    for (int i = 0; i < n; ++i) {
        double c = xs[i + 1] - xs[i];
        if (i > 0 && u01(rng) < 0.3) s += 0.2 + u01(rng);   // C0 kink
        // Nonnegative quadratic curvature a(t-r)^2 + b, so f has degree <= 4.
        double a = u01(rng) < 0.25 ? 0.0 : ua(rng);
        double b = u01(rng) < 0.25 ? 0.0 : ua(rng);
        double r = u01(rng) * c;
        Poly curv({a * r * r + b, -2.0 * a * r, a});
        Poly seg = curv.antiderivative(s).antiderivative(v);
        segs.push_back(seg);
        v = seg(c);
        s = seg.eval(c, 1);
    }
    PiecewiseFn f(std::move(xs), std::move(segs));
    // Insert a few mid-segment knots: exact C2 interior breakpoints.
    std::uniform_int_distribution<int> extra(0, 3);
    for (int k = extra(rng); k > 0 && f.segment_count() < 20; --k) {
        std::uniform_int_distribution<int> pick(0, f.segment_count() - 1);
        int j = pick(rng);
        f.split_at(0.5 * (f.xs[j] + f.xs[j + 1]));
    }
    return check_convex(f);
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260823);
    int runs = 0;
    for (int i = 0; i < 200; ++i) {
        ConvexFn f = random_convex(rng);
        double len = f.right() - f.left();
        double vscale = std::max(1.0, f.fn.value_scale());
        for (double bfrac : {0.1, 0.01}) {
            for (double pfrac : {1e-2, 1e-4}) {
                ToleranceConfig cfg =
                    make_config(f.left(), f.right(), bfrac * len, pfrac * vscale);
                auto [g, rep] = approximate(f, cfg);
                ++runs;
                double cscale = std::max(1.0, g.fn.curvature_scale());
                require(rep.residual_c0 <= 1e-9 * vscale, "c0 residual");
                require(rep.residual_c1 <= 1e-9 * std::max(1.0, vscale), "c1 residual");
                require(rep.residual_c2 <= 1e-9 * cscale, "c2 residual");
                require(rep.min_curvature >= -1e-10 * cscale, "min curvature");
                require(rep.disagreement < bfrac * len, "disagreement >= budget");
                require(rep.sup_error_global <= pfrac * vscale * (1 + 1e-12),
                        "sup error > profile");
                verify(f, g, cfg);   // exact per-segment profile check
            }
        }
    }
    double dt = elapsed_s(t0);
    require(dt < 60.0, "runtime " + std::to_string(dt) + "s >= 60s");
    std::ostringstream note;
    note << runs << " runs in " << dt << "s";
    std::cerr << "  [1] " << note.str() << "\n";
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> uc(0.05, 5.0), up(0.01, 10.0),
        ut(0.01, 0.99);
    for (int i = 0; i < 10000; ++i) {
        double c = uc(rng), P = up(rng), tau = ut(rng) * c;
        BumpDensity d = triangle_bump(c, P, tau);
        auto [mass, moment] = d.computed_moments();
        require(std::abs(mass - P) <= 1e-12 * P, "mass mismatch");
        require(std::abs(moment - P * tau) <= 1e-12 * P * tau, "moment mismatch");
        if (i % 10 == 0) {   // independent quadrature on a 1e3 subsample
            auto [qm, qt] = oracle::quad_moments(
                [&](double t) { return d.eval(t); }, 0.0, c, 1e-11);
            require(std::abs(qm - P) <= 1e-9 * std::max(1.0, P), "quad mass");
            require(std::abs(qt - P * tau) <= 1e-9 * std::max(1.0, P * tau),
                    "quad moment");
        }
    }
    require(elapsed_s(t0) < 10.0, "runtime >= 10s");
}

void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    BumpDensity tri = triangle_bump(2.0, 1.0, 0.5);
    double eps_exact = 4.0 - 2.0 * std::sqrt(2.0);
    require(std::abs(epsilon_bound(tri) - eps_exact) <= 1e-10, "closed-form eps");

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uc(0.2, 4.0), uh(0.0, 6.0), u01(0.0, 1.0);
    std::uniform_int_distribution<int> nmid(1, 5);
    for (int i = 0; i < 10000; ++i) {
        double c = uc(rng);
        int m = nmid(rng);
        BumpDensity h;
        h.c = c;
        h.nodes.push_back({0.0, 0.0});
        std::vector<double> ts(m);
        for (double& t : ts) t = u01(rng) * c;
        std::sort(ts.begin(), ts.end());
        for (double t : ts)
            if (t > h.nodes.back().first + 1e-9 && t < c - 1e-9)
                h.nodes.push_back({t, uh(rng)});
        h.nodes.push_back({c, 0.0});
        auto [P, M] = h.computed_moments();
        if (P <= 1e-9) continue;
        double eps = epsilon_bound(h.to_piecewise());
        BumpDensity built = triangle_bump(c, P, M / P);
        require(built.height <= 4.0 * eps * (1 + 1e-9), "height > 4 eps");
    }
    require(elapsed_s(t0) < 10.0, "runtime >= 10s");
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    ConvexFn q = check_convex(PiecewiseFn({0.0, 1.0}, {Poly({0.0, 0.0, 1.0})}));
    ConvexFn lin = check_convex(
        PiecewiseFn({0.0, 0.5, 1.0}, {Poly({0.0, 0.5}), Poly({0.25, 1.5})}));
    auto [sup, bound] = squeeze_check(q, lin, 0.0, 0.5, 1.0);
    require(std::abs(sup - 0.0625) <= 1e-12, "exact sup");
    require(std::abs(bound - 4.0) <= 1e-12, "exact bound");

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> uk(0.0, 5.0), us(-3.0, 3.0),
        ub(0.2, 0.8);
    for (int i = 0; i < 10000; ++i) {
        // f: convex quadratic; g: convex piecewise-linear interpolant of f
        // at alpha, beta, gamma (agreement at the three points by design).
        PiecewiseFn ff({0.0, 1.0}, {Poly({us(rng), us(rng), 0.5 * uk(rng)})});
        double alpha = 0.0, beta = ub(rng), gamma = 1.0;
        double fa = ff.eval(alpha), fb = ff.eval(beta), fc = ff.eval(gamma);
        PiecewiseFn gg({alpha, beta, gamma},
                       {Poly({fa, (fb - fa) / (beta - alpha)}),
                        Poly({fb, (fc - fb) / (gamma - beta)})});
        auto [s, b] = squeeze_check(check_convex(ff), check_convex(gg),
                                    alpha, beta, gamma);
        require(s <= b * (1 + 1e-12), "squeeze violated");
    }
    require(elapsed_s(t0) < 10.0, "runtime >= 10s");
}

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    bool threw = false;
    try {
        hermite_bridge({0, 0, 0, 2}, {1, 0, 0, 2});
    } catch (const Error& e) {
        threw = true;
        require(std::string(e.what()).find("OnTangent") != std::string::npos,
                "wrong reason");
    }
    require(threw, "bridge unexpectedly feasible");

    ConvexFn f = check_convex(fixtures::flat_middle());
    auto [g, rep] = approximate(f, make_config(-1.0, 2.0, 0.2, 0.05));
    require(rep.intervals.size() == 2, "expected exactly 2 intervals");
    for (const auto& iv : rep.intervals)
        require(!(iv.a <= 0.0 && iv.b >= 1.0), "interval spans [0,1]");
    require(rep.disagreement < 0.2, "budget");
    require(elapsed_s(t0) < 1.0, "runtime >= 1s");
}

void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    ConvexFn f = check_convex(fixtures::flat_middle());
    ConvexFn g = glue(f, 0.0, 1.0, 0.25);
    require(std::abs(disagreement_measure(f.fn, g.fn) - 1.5) <= 1e-12,
            "disagreement != 1.5");
    require(sup_abs_diff(f.fn, g.fn, -1.0, -0.25) == 0.0, "changed left flank");
    require(sup_abs_diff(f.fn, g.fn, 1.25, 2.0) == 0.0, "changed right flank");
    for (double r : g.fn.continuity_residuals(2))
        require(r <= 1e-8, "C2 residual");
    for (int j = 0; j < g.fn.segment_count(); ++j)
        require(poly_min_on(g.fn.segs[j].derivative().derivative(), 0.0,
                            g.fn.xs[j + 1] - g.fn.xs[j]) >= -1e-10,
                "not convex");

    ConvexFn lin = check_convex(PiecewiseFn({0.0, 2.0}, {Poly({1.0, 0.5})}));
    ConvexFn same = glue(lin, 0.5, 1.2, 0.1);
    require(disagreement_measure(lin.fn, same.fn) == 0.0,
            "equality case altered f");
    require(elapsed_s(t0) < 1.0, "runtime >= 1s");
}

void criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    // Fixed shape: tau/c = 0.5, so D = P*c/2; endpoint curvatures 0.
    double c = 1.0, P = 0.5;
    double prev_height = -1, prev_sup = 1e300;
    for (int k = 0; k < 30; ++k) {
        Bridge b = hermite_bridge({0, 0, 0, 0}, {c, 0.5 * P * c, P, 0});
        if (prev_height > 0)
            require(std::abs(b.density.height - 0.5 * prev_height) <=
                        1e-12 * prev_height,
                    "height not halved");
        double sup2 = b.density.height;   // sup of u'' = max density
        require(sup2 < prev_sup, "sup u'' not decreasing");
        prev_height = b.density.height;
        prev_sup = sup2;
        c *= 0.5;
        P *= 0.25;
    }
    require(prev_sup < 1e-8, "sup u'' did not vanish");
    require(elapsed_s(t0) < 1.0, "runtime >= 1s");
}

void criterion8() {
    // Every frozen expected value re-derived by the oracle before comparison.
    ConvexFn p = check_convex(fixtures::flat_middle());

    // sup |x^2 - chords| = 0.0625 via dense sampling.
    PiecewiseFn q({0.0, 1.0}, {Poly({0.0, 0.0, 1.0})});
    PiecewiseFn lin({0.0, 0.5, 1.0}, {Poly({0.0, 0.5}), Poly({0.25, 1.5})});
    double grid = 0;
    for (int i = 0; i <= 100000; ++i) {
        double x = i / 100000.0;
        grid = std::max(grid, std::abs(q.eval(x) - lin.eval(x)));
    }
    require(std::abs(grid - 0.0625) <= 1e-8, "oracle sup");
    require(std::abs(sup_abs_diff(q, lin) - grid) <= 1e-8, "exact vs oracle sup");

    // tangent gap at (-0.25, 1.25): direct arithmetic.
    double direct = p.eval(1.25) - p.eval(-0.25) - p.eval(-0.25, 1) * 1.5;
    require(std::abs(direct - 0.75) <= 1e-12, "oracle gap arithmetic");
    require(std::abs(tangent_gap(p, -0.25, 1.25) - direct) <= 1e-12,
            "exact vs oracle gap");

    // eps of the (c=2, P=1, tau=0.5) triangle: dense sampling of both
    // sup-averages using quadrature only.
    BumpDensity tri = triangle_bump(2.0, 1.0, 0.5);
    auto F = [&](double x) {
        return oracle::adaptive_simpson([&](double t) { return tri.eval(t); }, 0.0,
                                        x, 1e-12);
    };
    double total = F(2.0), sampled = 0;
    for (int i = 1; i <= 100000; ++i) {
        double x = 2.0 * i / 100000.0;
        sampled = std::max({sampled, F(x) / x, (total - F(2.0 - x)) / x});
    }
    require(std::abs(sampled - (4.0 - 2.0 * std::sqrt(2.0))) <= 1e-6, "oracle eps");
    require(std::abs(epsilon_bound(tri) - sampled) <= 1e-6, "exact vs oracle eps");

    // Triangle moments by quadrature.
    auto [qm, qt] = oracle::quad_moments([&](double t) { return tri.eval(t); },
                                         0.0, 2.0, 1e-12);
    require(std::abs(qm - 1.0) <= 1e-10 && std::abs(qt - 0.5) <= 1e-10,
            "oracle triangle moments");

    // Bridge endpoint data u(1) = 0.5, u'(1) = 1 via the Fubini identity and
    // finite differences.
    Bridge b = hermite_bridge({0, 0, 0, 0}, {1, 0.5, 1, 0});
    double fub = oracle::adaptive_simpson(
        [&](double t) { return b.density.eval(t) * (1.0 - t); }, 0.0, 1.0, 1e-12);
    require(std::abs(fub - 0.5) <= 1e-9, "oracle Fubini u(1)");
    require(std::abs(b.fn.eval(1.0) - fub) <= 1e-9, "exact vs oracle u(1)");
    double fd1 = oracle::fd_check([&](double x) { return b.fn.eval(x); }, 0.5, 1);
    require(std::abs(fd1 - b.fn.eval(0.5, 1)) <= 1e-5, "fd slope");

    // Lipschitz constant of the three-piece fixture by grid maximization of
    // finite-difference slopes.
    double lmax = 0;
    for (int i = 0; i <= 20000; ++i) {
        double x = -0.99999 + 2.99998 * i / 20000.0;
        lmax = std::max(lmax, std::abs(oracle::fd_check(
                                   [&](double y) { return p.eval(y); }, x, 1, 1e-8)));
    }
    require(std::abs(lmax - 2.0) <= 1e-3, "oracle Lipschitz");
    require(std::abs(lipschitz_const(p, -1.0, 2.0) - 2.0) <= 1e-12,
            "exact vs oracle Lipschitz");

    // Edge-ramp example (c=1, A=B=2, P=3, tau=0.5, w=0.25) by quadrature.
    BumpDensity er = edge_ramped_density(1.0, 2.0, 2.0, 3.0, 0.5, 0.25);
    auto [em, et] = oracle::quad_moments([&](double t) { return er.eval(t); },
                                         0.0, 1.0, 1e-12);
    require(std::abs(em - 3.0) <= 1e-9 && std::abs(et - 1.5) <= 1e-9,
            "oracle edge-ramp moments");

    // Kink box: mass = slope jump, centroid = kink location.
    ConvexFn a = check_convex(fixtures::abs_fn());
    auto [g, kinks] = round_kinks(a, 0.2);
    auto [bm, bt] = oracle::quad_moments([&](double x) { return g.eval(x, 2); },
                                         -0.1, 0.1, 1e-12);
    require(std::abs(bm - 2.0) <= 1e-9 && std::abs(bt - 0.0) <= 1e-9,
            "oracle kink box moments");
}

void criterion9() {
    // JSON round-trip through files, bit-exact, 100 random functions.
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> coef(-50.0, 50.0), ulen(1e-4, 3.0);
    std::uniform_int_distribution<int> nseg(1, 10), deg(0, 6);
    fs::path fpath = tmp_dir / "rt.json";
    for (int trial = 0; trial < 100; ++trial) {
        int n = nseg(rng);
        std::vector<double> xs{coef(rng)};
        for (int i = 0; i < n; ++i) xs.push_back(xs.back() + ulen(rng));
        std::vector<Poly> segs;
        for (int i = 0; i < n; ++i) {
            std::vector<double> cs(deg(rng) + 1);
            for (double& v : cs) v = coef(rng);
            segs.emplace_back(std::move(cs));
        }
        PiecewiseFn f(xs, segs);
        save_function(f, fpath.string());
        PiecewiseFn g = load_function(fpath.string());
        require(g.xs == f.xs, "breakpoints not bit-exact");
        for (int j = 0; j < n; ++j)
            require(g.segs[j].coeffs() == f.segs[j].coeffs(),
                    "coeffs not bit-exact");
    }

    // Exit-code classes, one fixture per class.
    fs::path in = tmp_dir / "in.json", out = tmp_dir / "out.json",
             rep = tmp_dir / "rep.json";
    save_function(fixtures::quadratic(), in.string());
    require(run_cli("approximate --input " + in.string() +
                    " --measure-budget 0.1 --profile const:0.01 --output " +
                    out.string() + " --report " + rep.string()) == 0,
            "exit 0 class");
    // Identity case: output function content matches input byte-for-byte.
    {
        std::ifstream a(in), b(out);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        require(sa.str() == sb.str(), "C2 input not passed through verbatim");
    }
    save_function(fixtures::nonconvex(), in.string());
    require(run_cli("approximate --input " + in.string() +
                    " --measure-budget 0.1 --profile const:0.01") == 2,
            "exit 2 class");
    save_function(fixtures::abs_fn(), in.string());
    require(run_cli("approximate --input " + in.string() +
                    " --measure-budget 0.1 --profile const:1e-25") == 3,
            "exit 3 class");
    require(run_cli("approximate --input " + (tmp_dir / "missing.json").string() +
                    " --measure-budget 0.1") == 4,
            "exit 4 class");
    require(run_cli("bridge --c 1 --left 0,0,2 --right 0,0,2") == 5,
            "exit 5 class");

    // demo figure1: both triangle orientations present.
    fs::path csv = tmp_dir / "fig1.csv";
    require(run_cli("demo figure1 --plot " + csv.string()) == 0, "figure1 exit");
    std::ifstream f1(csv);
    std::string line;
    bool has_left = false, has_right = false;
    while (std::getline(f1, line)) {
        if (line.rfind("left,", 0) == 0) has_left = true;
        if (line.rfind("right,", 0) == 0) has_right = true;
    }
    require(has_left && has_right, "figure1 missing an orientation");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <cli-binary>\n";
        return 2;
    }
    cli_path = argv[1];
    tmp_dir = fs::temp_directory_path() / "c2convex_acceptance";
    fs::create_directories(tmp_dir);

    std::vector<std::function<void()>> criteria = {
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9};
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
            std::cout << "CRITERION " << (i + 1) << ": PASS\n";
        } catch (const std::exception& e) {
            std::cout << "CRITERION " << (i + 1) << ": FAIL (" << e.what() << ")\n";
            ++failures;
        }
    }
    fs::remove_all(tmp_dir);
    return failures == 0 ? 0 : 1;
}
