#include "gauss_neumann/sl1d.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gauss_neumann/errors.hpp"

namespace gauss_neumann {

namespace {

// 5-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 5> kGlNodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                         0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGlWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                           0.4786286704993665, 0.2369268850561891};

/// Smallest R with one-sided Gaussian tail int_R^inf exp(-t^2/2) dt below tol.
double radius_from_tail(double tail_tol)
{
    if (!(tail_tol > 0.0))
        throw ParameterError("tail_tol must be positive");
    double lo = 0.0, hi = 1.0;
    while (gauss_interval(0.0, hi, kInf) >= tail_tol)
        hi *= 2.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (gauss_interval(0.0, mid, kInf) < tail_tol ? hi : lo) = mid;
    }
    return hi;
}

/// Mode k grows like x^k, so its share of the cut-off tail is larger by
/// about R^(2k); solve R^2 = R0^2 + 2k log(R^2).
double widen_for_modes(double R0, int modes)
{
    double r2 = R0 * R0;
    for (int i = 0; i < 30 && modes > 0; ++i)
        r2 = R0 * R0 + 2.0 * modes * std::log(r2);
    return std::sqrt(r2);
}

void check_options(const Sl1dOptions& opts)
{
    if (!(opts.h > 0.0))
        throw ParameterError("sl1d: h must be positive");
    if (!(opts.tol > 0.0))
        throw ParameterError("sl1d: tol must be positive");
}

} // namespace

double Grid1D::h() const
{
    double h = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i)
        h = std::max(h, nodes[i] - nodes[i - 1]);
    return h;
}

Grid1D make_grid(const WeightSpec& w, const Interval1D& iv, const Sl1dOptions& opts, int refine, int modes)
{
    check_options(opts);
    Grid1D g{iv, {}, kInf};
    double a = iv.a, b = iv.b;
    if (!iv.bounded()) {
        const double R = std::isnan(opts.R) ? widen_for_modes(radius_from_tail(opts.tail_tol), modes) : opts.R;
        if (!(R > 0.0))
            throw ParameterError("sl1d: truncation radius must be positive");
        g.truncation_radius = R;
        const double c = w.centre_x();
        if (!std::isfinite(a))
            a = std::min(c - R, b - R);
        if (!std::isfinite(b))
            b = std::max(c + R, a + R);
    }
    const auto n_el = static_cast<std::size_t>(std::ceil((b - a) / opts.h - 1e-9)) << refine;
    const std::size_t cells = std::max<std::size_t>(n_el, 2);
    g.nodes.resize(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i)
        g.nodes[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(cells);
    g.nodes.back() = b;
    return g;
}

std::pair<SparseMatrix, SparseMatrix> assemble_1d(const std::vector<double>& nodes, const Weight1D& p,
                                                  const Weight1D& q)
{
    const auto n = static_cast<Eigen::Index>(nodes.size());
    std::vector<Eigen::Triplet<double>> tk, tm;
    tk.reserve(4 * nodes.size());
    tm.reserve(4 * nodes.size());
    for (Eigen::Index e = 0; e + 1 < n; ++e) {
        const double xl = nodes[static_cast<std::size_t>(e)];
        const double xr = nodes[static_cast<std::size_t>(e + 1)];
        const double h = xr - xl;
        double ip = 0.0;
        double m00 = 0.0, m01 = 0.0, m11 = 0.0;
        for (std::size_t g = 0; g < kGlNodes.size(); ++g) {
            const double xi = 0.5 * (kGlNodes[g] + 1.0);
            const double x = xl + xi * h;
            const double wt = 0.5 * kGlWeights[g] * h;
            ip += wt * p(x);
            const double qv = wt * q(x);
            m00 += qv * (1.0 - xi) * (1.0 - xi);
            m01 += qv * (1.0 - xi) * xi;
            m11 += qv * xi * xi;
        }
        const double k = ip / (h * h);
        tk.emplace_back(e, e, k);
        tk.emplace_back(e + 1, e + 1, k);
        tk.emplace_back(e, e + 1, -k);
        tk.emplace_back(e + 1, e, -k);
        tm.emplace_back(e, e, m00);
        tm.emplace_back(e + 1, e + 1, m11);
        tm.emplace_back(e, e + 1, m01);
        tm.emplace_back(e + 1, e, m01);
    }
    SparseMatrix K(n, n), M(n, n);
    K.setFromTriplets(tk.begin(), tk.end());
    M.setFromTriplets(tm.begin(), tm.end());
    return {std::move(K), std::move(M)};
}

Spectrum1D solve_neumann_1d(const WeightSpec& w, const Interval1D& iv, int k, const Sl1dOptions& opts, int refine)
{
    if (k < 1)
        throw ParameterError("solve_neumann_1d: k must be >= 1");
    Grid1D grid = make_grid(w, iv, opts, refine, k);
    if (static_cast<std::size_t>(k + 1) > grid.size())
        throw ParameterError("solve_neumann_1d: k exceeds the number of discrete modes");
    const double x0 = w.x0;
    auto weight = [x0](double s) { return std::exp(-0.5 * (x0 + s) * (x0 + s)); };
    auto [K, M] = assemble_1d(grid.nodes, weight, weight);

    EigenOptions eo;
    eo.count = k + 1;
    eo.tol = opts.tol;
    eo.constant_kernel = true;
    EigenResult r = solve_lowest(K, M, eo);
    return {std::move(r.values), std::move(r.vectors), std::move(r.residuals), std::move(grid), opts.tol};
}

std::vector<double> solve_dirichlet_bound_constants(const WeightSpec& w, int k, const Sl1dOptions& opts, int refine)
{
    if (k < 0)
        throw ParameterError("solve_dirichlet_bound_constants: k must be >= 0");
    check_options(opts);
    const EpsWeights ew(w, 1.0, 0.0);
    const double R = std::isnan(opts.R) ? std::abs(w.x0) + radius_from_tail(opts.tail_tol) : opts.R;
    Sl1dOptions o = opts;
    o.R = R;
    Grid1D grid = make_grid(WeightSpec{}, Interval1D(0.0, kInf), o, refine, k);
    grid.nodes.back() = R;
    auto [Kf, Mf] = assemble_1d(
        grid.nodes, [&](double s) { return ew.gamma_plus(s); }, [&](double s) { return ew.gamma_minus(s); });
    const Eigen::Index n = Kf.rows() - 1;
    if (k + 1 > n)
        throw ParameterError("solve_dirichlet_bound_constants: k exceeds the number of discrete modes");
    const SparseMatrix K = Kf.bottomRightCorner(n, n);
    const SparseMatrix M = Mf.bottomRightCorner(n, n);

    EigenOptions eo;
    eo.count = k + 1;
    eo.tol = opts.tol;
    eo.constant_kernel = false;
    eo.shift = 0.0;
    return solve_lowest(K, M, eo).values;
}

std::vector<double> richardson(const std::vector<double>& coarse, const std::vector<double>& fine, double order)
{
    const double f = std::pow(2.0, order);
    std::vector<double> out(std::min(coarse.size(), fine.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (f * fine[i] - coarse[i]) / (f - 1.0);
    return out;
}

Extrapolated1D solve_neumann_1d_extrapolated(const WeightSpec& w, const Interval1D& iv, int k,
                                             const Sl1dOptions& opts)
{
    Spectrum1D coarse = solve_neumann_1d(w, iv, k, opts, 0);
    Spectrum1D fine = solve_neumann_1d(w, iv, k, opts, 1);
    Extrapolated1D out;
    out.coarse = coarse.eigenvalues;
    out.fine = fine.eigenvalues;
    out.values = richardson(out.coarse, out.fine);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.error_estimate.push_back(std::abs(out.fine[i] - out.values[i]));
    out.fine_spectrum = std::move(fine);
    return out;
}

} // namespace gauss_neumann
