// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gauss_neumann/cli.hpp"
#include "gauss_neumann/fem2d.hpp"
#include "gauss_neumann/sl1d.hpp"
#include "gauss_neumann/thinlimit.hpp"
#include "gauss_neumann/verify.hpp"

using namespace gauss_neumann;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
        o.pass = false;
        o.detail += " (runtime limit " + std::to_string(limit_s) + " s exceeded)";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2d %-28s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string run_verify(int& code)
{
    const char* argv[] = {"gauss-neumann", "verify", "--suite", "lower-bound", "--seed", "42"};
    std::ostringstream out, err;
    code = cli::run(6, argv, out, err);
    return out.str();
}

}

int main()
{
    criterion(1, "hermite spectrum on R", 5, [] {
        Sl1dOptions o;
        o.R = 10;
        o.h = 0.01;
        const auto e = solve_neumann_1d_extrapolated(WeightSpec{}, Interval1D(-kInf, kInf), 4, o);
        double err = 0;
        for (int n = 0; n <= 4; ++n)
            err = std::max(err, std::abs(e.values[static_cast<std::size_t>(n)] - n));
        return Outcome{err <= 1e-6, fmt("max |mu_n - n| = %.2e", err)};
    });

    criterion(2, "half-line spectrum", 5, [] {
        Sl1dOptions o;
        o.h = 0.01;
        const auto e = solve_neumann_1d_extrapolated(WeightSpec{}, Interval1D(0, kInf), 2, o);
        double err = 0;
        for (int n = 0; n <= 2; ++n)
            err = std::max(err, std::abs(e.values[static_cast<std::size_t>(n)] - 2 * n));
        return Outcome{err <= 1e-6, fmt("max |mu_n - 2n| = %.2e", err)};
    });

    criterion(3, "strip equality", 60, [] {
        Fem2dOptions o;
        o.h = 0.02;
        o.R = 8;
        const auto e = solve_neumann_2d_extrapolated(WeightSpec{}, Strip{0, 1}, 1, o);
        const double d = std::abs(e.values[1] - 1);
        return Outcome{d <= 1e-3, fmt("mu1 = %.10f", e.values[1]) + fmt(", |mu1 - 1| = %.2e", d)};
    });

    criterion(4, "tensor-product oracle", 60, [] {
        Fem2dOptions o;
        o.h = 0.05;
        const auto e = solve_neumann_2d_extrapolated(WeightSpec{}, ConvexPolygon::rectangle(-1, 1, 0, 2), 5, o);
        Sl1dOptions s;
        s.h = 0.05;
        const auto ex = solve_neumann_1d_extrapolated(WeightSpec{}, Interval1D(-1, 1), 5, s);
        const auto ey = solve_neumann_1d_extrapolated(WeightSpec{}, Interval1D(0, 2), 5, s);
        std::vector<double> sums;
        for (double a : ex.values)
            for (double b : ey.values)
                sums.push_back(a + b);
        std::sort(sums.begin(), sums.end());
        double rel = std::abs(e.values[0] - sums[0]);
        for (std::size_t i = 1; i < 6; ++i)
            rel = std::max(rel, std::abs(e.values[i] - sums[i]) / sums[i]);
        return Outcome{rel <= 1e-4, fmt("max rel deviation = %.2e", rel)};
    });

    std::vector<Verdict> lower, diam;
    criterion(5, "lower-bound corpus", 600, [&] {
        lower = run_suite("lower-bound", 42, VerifyOptions{});
        double worst = kInf;
        bool ok = lower.size() == 20;
        for (const auto& v : lower) {
            ok = ok && v.mu1 >= 1 - 1e-3;
            worst = std::min(worst, v.mu1);
        }
        return Outcome{ok, std::to_string(lower.size()) + " polygons" + fmt(", min mu1 = %.6f", worst)};
    });

    criterion(6, "diameter corpus", 600, [&] {
        diam = run_suite("diameter", 42, VerifyOptions{});
        double worst = kInf;
        bool ok = diam.size() == 20;
        for (const auto& v : diam) {
            ok = ok && v.mu1 >= v.bound - 1e-3;
            worst = std::min(worst, v.margin);
        }
        return Outcome{ok, std::to_string(diam.size()) + " polygons" + fmt(", min margin = %.6f", worst)};
    });

    SweepReport rep;
    bool sweep_ok = false;
    criterion(7, "thin-domain sweep", 600, [&] {
        SweepOptions o;
        o.h = 0.02;
        o.cross_check = true;
        rep = sweep(WeightSpec{}, Profile::linear(1.0), {0.4, 0.2, 0.1, 0.05}, 2, o);
        sweep_ok = true;
        const double r1 = std::abs(rep.limits[1] - rep.nu[1]) / rep.nu[1];
        const double r2 = std::abs(rep.limits[2] - rep.nu[2]) / rep.nu[2];
        const bool ok = r1 <= 0.02 && r2 <= 0.05 && rep.monotone[1] && rep.monotone[2];
        return Outcome{ok, fmt("mu1* = %.6f", rep.limits[1]) + fmt(" (nu1 %.6f)", rep.nu[1]) +
                               fmt(", mu2* = %.6f", rep.limits[2]) + fmt(" (nu2 %.6f)", rep.nu[2]) +
                               (rep.monotone[1] && rep.monotone[2] ? ", monotone" : ", not monotone")};
    });

    criterion(8, "transverse defect slope", 0, [&] {
        if (!sweep_ok)
            return Outcome{false, "sweep failed"};
        return Outcome{rep.defect_slope >= 0.8, fmt("log-log slope = %.3f", rep.defect_slope)};
    });

    criterion(9, "dirichlet bound constants", 0, [&] {
        if (!sweep_ok)
            return Outcome{false, "sweep failed"};
        double worst = -kInf;
        bool ok = true;
        for (const auto& r : rep.rows)
            if (r.n >= 1) {
                ok = ok && r.mu <= 1.01 * r.C;
                worst = std::max(worst, r.mu / r.C);
            }
        return Outcome{ok && rep.bound_ok, fmt("max mu_n / C_n = %.4f", worst)};
    });

    criterion(10, "splitting mechanics", 0, [] {
        const SplitResult s = split_experiment(WeightSpec{}, Strip{0, 1}, VerifyOptions{});
        const double rq = std::min(s.rayleigh_half1, s.rayleigh_half2);
        const bool ok = std::abs(s.direction.integral) <= 1e-8 && s.equal_area_defect <= 1e-8 &&
                        rq <= s.mu1_whole + 1e-6;
        return Outcome{ok, fmt("alpha = %.6f", s.alpha_star) + fmt(", |I| = %.1e", std::abs(s.direction.integral)) +
                               fmt(", area defect = %.1e", s.equal_area_defect) + fmt(", min rq - mu1 = %.1e", rq - s.mu1_whole)};
    });

    criterion(11, "unitary-equivalence check", 0, [&] {
        if (!sweep_ok)
            return Outcome{false, "sweep failed"};
        double worst = 0;
        bool seen = false;
        for (const auto& r : rep.rows)
            if ((std::abs(r.eps - 0.2) < 1e-12 || std::abs(r.eps - 0.1) < 1e-12) && r.n >= 1) {
                worst = std::max(worst, r.cross_rel);
                seen = true;
            }
        return Outcome{seen && worst <= 1e-3, fmt("max rel deviation = %.2e", worst)};
    });

    criterion(12, "determinism", 0, [] {
        int c1 = -1, c2 = -1;
        const std::string a = run_verify(c1), b = run_verify(c2);
        const bool ok = c1 == 0 && c2 == 0 && !a.empty() && a == b;
        return Outcome{ok, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
    });

    std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
