#include "gauss_neumann/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/parallel.hpp"

namespace gauss_neumann {

namespace {

Fem2dOptions fem_options(const VerifyOptions& opts)
{
    Fem2dOptions fo;
    fo.h = opts.h;
    fo.refine = opts.refine;
    fo.tail_tol = opts.tail_tol;
    fo.R = opts.R;
    fo.tol = opts.solver_tol;
    return fo;
}

MeshInfo mesh_info(const VerifyOptions& opts, const TriMesh& m)
{
    return {opts.h, opts.refine + 1, m.truncation_radius, m.vertices.size()};
}

Domain truncated(const WeightSpec& w, const Domain& d, const VerifyOptions& opts)
{
    return (std::isnan(opts.R) ? truncate(w, d, opts.tail_tol) : truncate_at(w, d, opts.R)).domain;
}

double min_corner_angle(const std::vector<Point>& v)
{
    double worst = 180.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point prev = v[(i + v.size() - 1) % v.size()];
        const Point next = v[(i + 1) % v.size()];
        const Point a = prev - v[i], b = next - v[i];
        worst = std::min(worst, std::atan2(std::abs(cross(a, b)), dot(a, b)) * 180.0 / std::numbers::pi);
    }
    return worst;
}

} // namespace

LowerBoundResult check_lower_bound(const WeightSpec& w, const Domain& d, const VerifyOptions& opts)
{
    const Extrapolated2D e = solve_neumann_2d_extrapolated(w, d, 1, fem_options(opts));
    LowerBoundResult r;
    r.mu1 = e.values[1];
    r.mu1_coarse = e.coarse[1];
    r.mu1_fine = e.fine[1];
    r.tol = std::max(e.error_estimate[1], opts.tol_floor);
    r.margin = r.mu1 - 1.0;
    r.pass = r.margin >= -r.tol;
    r.mesh = mesh_info(opts, e.fine_spectrum.mesh);
    return r;
}

DiameterResult check_diameter_bound(const WeightSpec& w, const Domain& d, const VerifyOptions& opts)
{
    if (!is_bounded(d))
        throw ParameterError("check_diameter_bound: domain must be bounded");
    DiameterResult r;
    r.diameter = diameter(d);
    const Extrapolated2D e = solve_neumann_2d_extrapolated(w, d, 1, fem_options(opts));
    const Extrapolated1D one =
        solve_neumann_1d_extrapolated(WeightSpec{}, Interval1D(-0.5 * r.diameter, 0.5 * r.diameter), 1, opts.sl1d);
    r.mu1 = e.values[1];
    r.mu1_1d_of_diameter = one.values[1];
    r.tol = std::max(e.error_estimate[1] + one.error_estimate[1], opts.tol_floor);
    r.margin = r.mu1 - r.mu1_1d_of_diameter;
    r.pass = r.margin >= -r.tol;
    r.mesh = mesh_info(opts, e.fine_spectrum.mesh);
    return r;
}

SplitResult split_experiment(const WeightSpec& w, const Domain& d, const VerifyOptions& opts)
{
    SplitResult r;
    const Extrapolated2D e = solve_neumann_2d_extrapolated(w, d, 1, fem_options(opts));
    const Spectrum2D& s = e.fine_spectrum;
    const TriMesh& mesh = s.mesh;
    const Eigen::VectorXd u = s.eigenvectors.col(1);
    r.mesh = mesh_info(opts, mesh);
    r.mu1_whole = s.eigenvalues[1];
    r.tol = opts.split_tol;

    r.l1_norm = integrate_all(w, mesh, u).abs_u;
    auto half = [&](const HalfPlane& hp) { return integrate_half(w, mesh, u, hp).u; };
    r.direction = find_zero_mean_direction(w, d, half, r.l1_norm, opts.zero_mean_tol);
    r.alpha_star = r.direction.alpha;
    r.offset = r.direction.offset;
    if (r.direction.degenerate) {
        r.degenerate = true;
        r.pass = true;
        return r;
    }

    const EqualAreaCut cut = bisect_equal_area(w, d, r.alpha_star, 1e-12);
    r.equal_area_defect = std::abs(cut.measure_below - 0.5 * cut.measure_total) / cut.measure_total;

    const HalfIntegrals h1 = integrate_half(w, mesh, u, cut.line);
    const HalfIntegrals h2 = integrate_half(w, mesh, u, cut.line.complement());
    r.rayleigh_half1 = h1.grad2 / h1.u2;
    r.rayleigh_half2 = h2.grad2 / h2.u2;
    r.pass = std::min(r.rayleigh_half1, r.rayleigh_half2) <= r.mu1_whole + r.tol;

    const ConvexPolygon whole = as_polygon(truncated(w, d, opts));
    const double m = gaussian_measure(w, whole, 1e-12);
    Fem2dOptions fo = fem_options(opts);
    fo.refine = opts.refine + 1;
    auto half_mu1 = [&](const HalfPlane& hp, double& out) {
        const auto piece = whole.clip(hp);
        if (!piece || gaussian_measure(w, *piece, 1e-12) < 1e-6 * m) {
            r.degenerate = true;
            return;
        }
        out = solve_neumann_2d(w, *piece, 1, fo).eigenvalues[1];
    };
    half_mu1(cut.line, r.mu1_half1);
    half_mu1(cut.line.complement(), r.mu1_half2);
    return r;
}

ConvexPolygon strictness_domain(const WeightSpec& w, double kappa, const VerifyOptions& opts)
{
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw ParameterError("strictness_domain: kappa must be finite and non-negative");
    const Strip strip{0.0, 1.0};
    const ConvexPolygon box = std::get<ConvexPolygon>(truncated(w, strip, opts));
    const auto b = box.bounds();
    if (kappa == 0.0)
        return box;
    const double tip = -0.5 / kappa;
    if (!(b[1] > 0.0))
        throw ParameterError("strictness_domain: truncation box does not reach x = 0");
    ConvexPolygon wedge({{0.0, 0.0}, {b[1], 0.0}, {b[1], 1.0}, {0.0, 1.0}, {tip, 0.5}});
    if (tip >= b[0])
        return wedge;
    auto cut = wedge.clip({{-1.0, 0.0}, -b[0]});
    if (!cut)
        throw DomainError("strictness_domain: empty domain");
    return *cut;
}

StrictnessScan strictness_scan(const WeightSpec& w, const std::vector<double>& kappas, const VerifyOptions& opts)
{
    StrictnessScan scan;
    scan.points = parallel_map<StrictnessPoint>(kappas.size(), [&](std::size_t i) {
        const LowerBoundResult lb = check_lower_bound(w, strictness_domain(w, kappas[i], opts), opts);
        return StrictnessPoint{kappas[i], lb.mu1, lb.margin, lb.tol, lb.mesh};
    });
    auto sorted = scan.points;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.kappa < b.kappa; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].margin < sorted[i - 1].margin - sorted[i].tol - sorted[i - 1].tol)
            scan.monotone = false;
    return scan;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ConvexPolygon random_convex_polygon(std::mt19937_64& rng)
{
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const int n = 8 + static_cast<int>(uniform01(rng) * 9.0);
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) {
            const double theta = 2.0 * std::numbers::pi * uniform01(rng);
            const double r = 0.5 + 2.5 * uniform01(rng);
            pts.push_back({r * std::cos(theta), r * std::sin(theta)});
        }
        auto hull = convex_hull(std::move(pts));
        if (hull.size() < 3 || !is_convex_ccw(hull) || min_corner_angle(hull) < 20.0)
            continue;
        ConvexPolygon poly(std::move(hull));
        if (poly.area() < 0.1)
            continue;
        return poly;
    }
    throw DomainError("random_convex_polygon: no admissible hull drawn");
}

std::vector<ConvexPolygon> random_corpus(std::uint64_t seed, int count)
{
    if (count < 0)
        throw ParameterError("random_corpus: count must be non-negative");
    std::mt19937_64 rng(seed);
    std::vector<ConvexPolygon> out;
    for (int i = 0; i < count; ++i)
        out.push_back(random_convex_polygon(rng));
    return out;
}

namespace {

template <class F>
std::vector<Verdict> in_blocks(std::size_t n, F&& job, const VerdictSink& sink)
{
    std::vector<Verdict> out;
    const auto block = static_cast<std::size_t>(std::max(1, worker_count()));
    for (std::size_t start = 0; start < n; start += block) {
        const std::size_t len = std::min(block, n - start);
        auto part = parallel_map<Verdict>(len, [&](std::size_t i) { return job(start + i); });
        for (auto& v : part) {
            if (sink)
                sink(v);
            out.push_back(std::move(v));
        }
    }
    return out;
}

} // namespace

std::vector<Verdict> run_suite(const std::string& suite, std::uint64_t seed, const VerifyOptions& opts,
                               const VerdictSink& sink)
{
    const WeightSpec w{};
    if (suite == "lower-bound") {
        const auto corpus = random_corpus(seed);
        return in_blocks(
            corpus.size(),
            [&](std::size_t i) {
                const auto r = check_lower_bound(w, corpus[i], opts);
                return Verdict{"lower-bound", corpus[i], r.mu1, 1.0, r.margin, r.tol, r.pass, seed, r.mesh, {}};
            },
            sink);
    }
    if (suite == "diameter") {
        const auto corpus = random_corpus(seed);
        return in_blocks(
            corpus.size(),
            [&](std::size_t i) {
                const auto r = check_diameter_bound(w, corpus[i], opts);
                return Verdict{"diameter", corpus[i], r.mu1, r.mu1_1d_of_diameter, r.margin, r.tol, r.pass, seed,
                               r.mesh, {{"diameter", r.diameter}}};
            },
            sink);
    }
    if (suite == "split") {
        std::vector<Domain> domains{Strip{0.0, 1.0}, ConvexPolygon::rectangle(-1.0, 1.0, -1.0, 1.0)};
        std::vector<Point> hex;
        for (int k = 0; k < 6; ++k)
            hex.push_back({std::cos(k * std::numbers::pi / 3.0), std::sin(k * std::numbers::pi / 3.0)});
        domains.emplace_back(ConvexPolygon(std::move(hex)));
        return in_blocks(domains.size(), [&](std::size_t i) {
            const auto r = split_experiment(w, domains[i], opts);
            const double bound = std::min(r.rayleigh_half1, r.rayleigh_half2);
            return Verdict{"split", domains[i], r.mu1_whole, bound, r.mu1_whole - bound, r.tol, r.pass, seed, r.mesh,
                           {{"alpha", r.alpha_star},
                            {"offset", r.offset},
                            {"integral", r.direction.integral},
                            {"alpha_lo", r.direction.alpha_lo},
                            {"integral_lo", r.direction.integral_lo},
                            {"alpha_hi", r.direction.alpha_hi},
                            {"integral_hi", r.direction.integral_hi},
                            {"equal_area_defect", r.equal_area_defect},
                            {"rayleigh_half1", r.rayleigh_half1},
                            {"rayleigh_half2", r.rayleigh_half2},
                            {"mu1_half1", r.mu1_half1},
                            {"mu1_half2", r.mu1_half2},
                            {"degenerate", r.degenerate ? 1.0 : 0.0}}};
        }, sink);
    }
    if (suite == "strictness") {
        const std::vector<double> kappas{0.0, 0.25, 0.5, 1.0};
        const auto scan = strictness_scan(w, kappas, opts);
        std::vector<Verdict> out;
        for (const auto& p : scan.points) {
            const bool pass = p.kappa == 0.0 ? p.margin >= -p.tol : p.margin > p.tol;
            out.push_back({"strictness", strictness_domain(w, p.kappa, opts), p.mu1, 1.0, p.margin, p.tol, pass, seed,
                           p.mesh, {{"kappa", p.kappa}, {"monotone", scan.monotone ? 1.0 : 0.0}}});
            if (sink)
                sink(out.back());
        }
        return out;
    }
    throw ParameterError("unknown suite '" + suite + "'");
}

} // namespace gauss_neumann
