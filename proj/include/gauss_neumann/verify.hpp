#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gauss_neumann/fem2d.hpp"
#include "gauss_neumann/geometry.hpp"
#include "gauss_neumann/sl1d.hpp"
#include "gauss_neumann/weights.hpp"

namespace gauss_neumann {

struct VerifyOptions {
    double h = 0.1;
    int refine = 0;          ///< two-mesh estimate uses refine and refine + 1
    double tail_tol = 1e-10;
    double R = std::numeric_limits<double>::quiet_NaN();
    double solver_tol = 1e-10;
    double tol_floor = 1e-8; ///< smallest discretization tolerance attached to a verdict
    double split_tol = 1e-6; ///< slack of the restricted-quotient inequality
    double zero_mean_tol = 1e-10; ///< relative tolerance on I(alpha)
    Sl1dOptions sl1d{};
};

struct MeshInfo {
    double h = 0.0;
    int refine = 0;
    double R = kInf;
    std::size_t nodes = 0;
};

struct Verdict {
    std::string check;
    Domain domain = Plane{};
    double mu1 = 0.0;
    double bound = 0.0;
    double margin = 0.0; ///< mu1 - bound
    double tol = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    MeshInfo mesh;
    std::vector<std::pair<std::string, double>> extra;
};

struct LowerBoundResult {
    double mu1 = 0.0;       ///< extrapolated
    double mu1_coarse = 0.0;
    double mu1_fine = 0.0;
    double tol = 0.0;       ///< two-mesh error estimate (floored)
    double margin = 0.0;    ///< mu1 - 1
    bool pass = false;
    MeshInfo mesh;
};

/// mu_1(d) >= 1 up to the discretization tolerance.
LowerBoundResult check_lower_bound(const WeightSpec& w, const Domain& d, const VerifyOptions& opts);

struct DiameterResult {
    double mu1 = 0.0;
    double mu1_1d_of_diameter = 0.0; ///< mu_1(-d/2, d/2) with the standard weight
    double diameter = 0.0;
    double tol = 0.0;
    double margin = 0.0;
    bool pass = false;
    MeshInfo mesh;
};

/// mu_1(d) >= mu_1(-diam/2, diam/2); ParameterError for unbounded d.
DiameterResult check_diameter_bound(const WeightSpec& w, const Domain& d, const VerifyOptions& opts);

struct SplitResult {
    ZeroMeanDirection direction;
    double alpha_star = 0.0;
    double offset = 0.0;
    double l1_norm = 0.0;
    double equal_area_defect = 0.0; ///< |m(half) - m/2| / m
    double mu1_whole = 0.0;
    double mu1_half1 = std::numeric_limits<double>::quiet_NaN();
    double mu1_half2 = std::numeric_limits<double>::quiet_NaN();
    double rayleigh_half1 = 0.0; ///< half {p . n < c}
    double rayleigh_half2 = 0.0;
    double tol = 0.0;
    bool degenerate = false;
    bool pass = false;
    MeshInfo mesh;
};

SplitResult split_experiment(const WeightSpec& w, const Domain& d, const VerifyOptions& opts);

/// {0 < y < 1, x > p(y)} with p(y) = (|y - 1/2| - 1/2) / kappa, cut at the
/// truncation radius; kappa = 0 is the strip itself.
ConvexPolygon strictness_domain(const WeightSpec& w, double kappa, const VerifyOptions& opts);

struct StrictnessPoint {
    double kappa = 0.0;
    double mu1 = 0.0;
    double margin = 0.0;
    double tol = 0.0;
    MeshInfo mesh;
};

struct StrictnessScan {
    std::vector<StrictnessPoint> points;
    bool monotone = true; ///< margins non-decreasing in kappa (up to tol)
};

StrictnessScan strictness_scan(const WeightSpec& w, const std::vector<double>& kappas, const VerifyOptions& opts);

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double uniform01(std::mt19937_64& rng);

/// Hull of 8-16 points at uniform angles with radii uniform in [0.5, 3];
/// hulls with a corner sharper than 20 degrees or tiny area are redrawn.
ConvexPolygon random_convex_polygon(std::mt19937_64& rng);
std::vector<ConvexPolygon> random_corpus(std::uint64_t seed, int count = 20);

using VerdictSink = std::function<void(const Verdict&)>;

/// Suites: "lower-bound", "diameter", "split", "strictness". Verdicts are
/// handed to `sink` in suite order as soon as each block of concurrent jobs
/// completes.
std::vector<Verdict> run_suite(const std::string& suite, std::uint64_t seed, const VerifyOptions& opts,
                               const VerdictSink& sink = {});

} // namespace gauss_neumann
