#include "gauss_neumann/thinlimit.hpp"

#include <algorithm>
#include <cmath>

#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/parallel.hpp"

namespace gauss_neumann {

double compute_a_eps(const Profile& f, double eps)
{
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw ParameterError("compute_a_eps: eps must be positive and finite");
    if (!(eps < f.sup()))
        throw ParameterError("compute_a_eps: eps must be below sup f");
    if (f(0.0) >= eps)
        return 0.0;
    double lo = 0.0, hi = 1.0;
    while (f(hi) < eps) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300)
            throw ParameterError("compute_a_eps: profile never reaches eps");
    }
    for (int it = 0; it < 400 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < eps ? lo : hi) = mid;
    }
    return hi;
}

ThinMap::ThinMap(Profile f, double eps) : f_(std::move(f)), eps_(eps), a_(compute_a_eps(f_, eps)) {}

double ThinMap::g(double s) const
{
    if (s < 0.0)
        return a_ * (s + 1.0);
    return s + a_;
}

double ThinMap::g_prime(double s) const { return s < 0.0 ? a_ : 1.0; }

double ThinMap::g_inverse(double x) const
{
    if (x < a_)
        return x / a_ - 1.0;
    return x - a_;
}

double ThinMap::f_eps(double x) const { return std::min(eps_, f_(x)); }

double ThinMap::f_eps_prime(double x) const { return f_(x) < eps_ ? f_.derivative(x) : 0.0; }

Point ThinMap::to_physical(double s, double t) const
{
    if (!std::isfinite(s) || !std::isfinite(t) || s < s_min() || t < 0.0 || t > 1.0)
        throw DomainError("thin map: (s, t) outside the reference strip");
    const double x = g(s);
    return {x, f_eps(x) * t};
}

double ThinMap::jacobian(double s) const
{
    if (!std::isfinite(s) || s < s_min())
        throw DomainError("thin map: s outside the reference strip");
    return g_prime(s) * f_eps(g(s));
}

std::vector<double> ThinMap::reference_kinks() const
{
    std::vector<double> out;
    if (has_collar())
        out.push_back(0.0);
    for (double k : f_.kinks())
        out.push_back(g_inverse(k));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Point map_L_eps(const ThinMap& t, double s, double u) { return t.to_physical(s, u); }

double jacobian(const ThinMap& t, double s) { return t.jacobian(s); }

TriMesh reference_strip_mesh(const ThinMap& t, const ProfileDomain& physical, double h, bool grading,
                             int refine, double delta)
{
    if (!(delta > 0.0 && delta < 0.5))
        throw ParameterError("reference_strip_mesh: delta must lie in (0, 0.5)");
    const auto xs = profile_columns(physical, h, grading, refine);
    const int ny = profile_rows(physical, h, refine);
    const bool apex = physical.f(0.0) <= 0.0;

    std::vector<double> ss;
    if (apex) {
        const double s_lo = -1.0 + delta;
        ss.push_back(s_lo);
        for (double x : xs) {
            const double s = t.g_inverse(x);
            if (s > s_lo + delta)
                ss.push_back(s);
        }
    } else {
        ss.push_back(t.s_min());
        for (double x : xs)
            ss.push_back(t.g_inverse(x));
    }

    ColumnLayout layout{ss, ny, false};
    TriMesh m;
    for (double s : ss)
        for (int j = 0; j <= ny; ++j)
            m.vertices.push_back({s, j == ny ? 1.0 : static_cast<double>(j) / ny});
    for (std::size_t c = 0; c + 1 < ss.size(); ++c)
        for (int j = 0; j < ny; ++j) {
            const int a = layout.node(c, j), b = layout.node(c + 1, j);
            const int bc = layout.node(c + 1, j + 1), ac = layout.node(c, j + 1);
            m.triangles.push_back({a, b, bc});
            m.triangles.push_back({a, bc, ac});
        }
    m.columns = std::move(layout);
    m.source = "reference-strip";
    m.finalize();
    return m;
}

DiscretePair assemble_h_eps(const WeightSpec& w, const ThinMap& t, const TriMesh& mesh)
{
    const auto kinks = t.reference_kinks();
    const auto& rule = triangle_rule();
    std::vector<Eigen::Triplet<double>> kt, mt;
    kt.reserve(9 * mesh.triangles.size());
    mt.reserve(9 * mesh.triangles.size());
    const double eps = t.eps();

    for (std::size_t e = 0; e < mesh.triangles.size(); ++e) {
        const auto& v = mesh.triangles[e];
        std::array<Point, 3> p;
        for (std::size_t i = 0; i < 3; ++i)
            p[i] = mesh.vertices[static_cast<std::size_t>(v[i])];
        const double smin = std::min({p[0].x, p[1].x, p[2].x});
        const double smax = std::max({p[0].x, p[1].x, p[2].x});
        if (smin < t.s_min() - 1e-14)
            throw MeshError("assemble_h_eps: mesh leaves the reference strip");
        for (double k : kinks) {
            const double tol = 1e-12 * std::max(1.0, std::abs(k));
            if (smin < k - tol && smax > k + tol)
                throw MeshError("assemble_h_eps: mesh is not aligned with the kink at s = " + std::to_string(k));
        }
        const double det = cross(p[1] - p[0], p[2] - p[0]);
        if (!(det > 0.0))
            throw MeshError("assemble_h_eps: triangle with non-positive area");
        const double area = 0.5 * det;
        std::array<Point, 3> grad;
        for (std::size_t i = 0; i < 3; ++i) {
            const Point a = p[(i + 1) % 3], b = p[(i + 2) % 3];
            grad[i] = {(a.y - b.y) / det, (b.x - a.x) / det};
        }

        double kloc[3][3] = {}, mloc[3][3] = {};
        for (std::size_t q = 0; q < rule.weights.size(); ++q) {
            const auto& l = rule.barycentric[q];
            const Point st = l[0] * p[0] + l[1] * p[1] + l[2] * p[2];
            const double gp = t.g_prime(st.x);
            const double x = t.g(st.x);
            const double fe = t.f_eps(x);
            const double c = t.f_eps_prime(x) / fe;
            const double weight = rule.weights[q] * area * w.gamma(x, fe * st.y) * gp * fe / eps;
            std::array<double, 3> A, B;
            for (std::size_t i = 0; i < 3; ++i) {
                A[i] = grad[i].x / gp - c * st.y * grad[i].y;
                B[i] = grad[i].y / fe;
            }
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j <= i; ++j) {
                    kloc[i][j] += weight * (A[i] * A[j] + B[i] * B[j]);
                    mloc[i][j] += weight * l[i] * l[j];
                }
        }
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                kt.emplace_back(v[i], v[j], kloc[i][j]);
                mt.emplace_back(v[i], v[j], mloc[i][j]);
                if (i != j) {
                    kt.emplace_back(v[j], v[i], kloc[i][j]);
                    mt.emplace_back(v[j], v[i], mloc[i][j]);
                }
            }
    }
    const auto n = static_cast<Eigen::Index>(mesh.vertices.size());
    DiscretePair out{SparseMatrix(n, n), SparseMatrix(n, n)};
    out.K.setFromTriplets(kt.begin(), kt.end());
    out.M.setFromTriplets(mt.begin(), mt.end());
    return out;
}

TransverseDefect transverse_defect(const WeightSpec& w, const ThinMap& t, const TriMesh& mesh,
                                   const Eigen::VectorXd& psi, Coordinates coords)
{
    if (!mesh.columns)
        throw ParameterError("transverse_defect: mesh has no column structure");
    if (psi.size() != static_cast<Eigen::Index>(mesh.vertices.size()))
        throw ParameterError("transverse_defect: field size does not match the mesh");
    const ColumnLayout& L = *mesh.columns;
    const int ny = L.ny;
    const double g = 0.5 / std::sqrt(3.0);

    std::vector<double> s_at, eta2, psi2;
    TransverseDefect out;
    for (std::size_t c = 0; c < L.x.size(); ++c) {
        const double s = coords == Coordinates::Physical ? t.g_inverse(L.x[c]) : L.x[c];
        if (s < -1e-12)
            continue;
        std::vector<double> col(static_cast<std::size_t>(ny) + 1);
        for (int j = 0; j <= ny; ++j)
            col[static_cast<std::size_t>(j)] = psi[L.node(c, j)];
        double phi = 0.0;
        for (int j = 0; j < ny; ++j)
            phi += 0.5 * (col[static_cast<std::size_t>(j)] + col[static_cast<std::size_t>(j) + 1]) / ny;
        double mean = 0.0, e2 = 0.0, p2 = 0.0;
        for (int j = 0; j < ny; ++j) {
            const double a = col[static_cast<std::size_t>(j)], b = col[static_cast<std::size_t>(j) + 1];
            mean += 0.5 * ((a - phi) + (b - phi)) / ny;
            for (double off : {0.5 - g, 0.5 + g}) {
                const double tq = (j + off) / ny;
                const Point x = t.to_physical(std::max(s, 0.0), tq);
                const double wq = 0.5 / ny * w.gamma(x.x, x.y);
                const double val = a + off * (b - a);
                e2 += wq * (val - phi) * (val - phi);
                p2 += wq * val * val;
            }
        }
        out.max_mean_residual = std::max(out.max_mean_residual, std::abs(mean));
        s_at.push_back(s);
        eta2.push_back(e2);
        psi2.push_back(p2);
    }
    if (s_at.size() < 2)
        throw ParameterError("transverse_defect: mesh has fewer than two channel columns");
    double E = 0.0, P = 0.0;
    for (std::size_t i = 0; i + 1 < s_at.size(); ++i) {
        const double ds = s_at[i + 1] - s_at[i];
        E += 0.5 * ds * (eta2[i] + eta2[i + 1]);
        P += 0.5 * ds * (psi2[i] + psi2[i + 1]);
    }
    if (!(P > 0.0))
        throw DomainError("transverse_defect: mode has zero norm on the channel");
    out.eta_norm = std::sqrt(E);
    out.psi_norm = std::sqrt(P);
    out.defect = out.eta_norm / out.psi_norm;
    return out;
}

const SweepRow& SweepReport::row(std::size_t eps_index, int n) const
{
    return rows.at(eps_index * static_cast<std::size_t>(n_max + 1) + static_cast<std::size_t>(n));
}

double extrapolate_to_zero(double x1, double y1, double x2, double y2)
{
    if (x1 == x2)
        throw ParameterError("extrapolate_to_zero: abscissae coincide");
    return y2 - x2 * (y1 - y2) / (x1 - x2);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw ParameterError("loglog_slope: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw ParameterError("loglog_slope: values must be positive");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

struct LevelResult {
    std::vector<double> values;
    std::vector<double> residuals;
    Eigen::MatrixXd vectors;
    TriMesh mesh;
};

LevelResult solve_reference(const WeightSpec& w, const ThinMap& map, const ProfileDomain& pd,
                            const SweepOptions& opts, int n_max, int refine)
{
    LevelResult r;
    r.mesh = reference_strip_mesh(map, pd, opts.h, opts.grading, refine, opts.delta_cut);
    const DiscretePair km = assemble_h_eps(w, map, r.mesh);
    EigenOptions eo;
    eo.count = n_max + 1;
    eo.tol = opts.tol;
    EigenResult er = solve_lowest(km.K, km.M, eo);
    r.values = std::move(er.values);
    r.residuals = std::move(er.residuals);
    r.vectors = std::move(er.vectors);
    return r;
}

LevelResult solve_physical(const WeightSpec& w, const ProfileDomain& pd, const SweepOptions& opts, int n_max,
                           int refine)
{
    Spectrum2D s = solve_on_mesh(w, mesh_profile(pd, opts.h, opts.grading, refine), n_max, opts.tol);
    return {std::move(s.eigenvalues), std::move(s.residuals), std::move(s.eigenvectors), std::move(s.mesh)};
}

struct EpsResult {
    double a = 0.0;
    double R = kInf;
    std::vector<SweepRow> rows;
    std::vector<double> phi1; ///< mode-1 transverse mean on the Cauchy grid
};

constexpr double kCauchyLength = 4.0;
constexpr int kCauchySamples = 401;

double cauchy_ds() { return kCauchyLength / (kCauchySamples - 1); }

/// Transverse mean of psi on s in [0, kCauchyLength], resampled on a fixed
/// grid and normalized in L2(gamma0(s) ds), the norm of the limit problem.
std::vector<double> channel_mean(const WeightSpec& w, const ThinMap& t, const TriMesh& mesh,
                                 const Eigen::VectorXd& psi, Coordinates coords)
{
    const ColumnLayout& L = *mesh.columns;
    std::vector<double> s_at, phi;
    for (std::size_t c = 0; c < L.x.size(); ++c) {
        const double s = coords == Coordinates::Physical ? t.g_inverse(L.x[c]) : L.x[c];
        if (s < -1e-12)
            continue;
        double m = 0.0;
        for (int j = 0; j < L.ny; ++j)
            m += 0.5 * (psi[L.node(c, j)] + psi[L.node(c, j + 1)]) / L.ny;
        s_at.push_back(std::max(s, 0.0));
        phi.push_back(m);
    }
    if (s_at.size() < 2 || s_at.back() < kCauchyLength)
        throw ParameterError("sweep: channel shorter than the Cauchy window");
    std::vector<double> out(kCauchySamples);
    std::size_t k = 0;
    double norm2 = 0.0;
    for (int i = 0; i < kCauchySamples; ++i) {
        const double s = i * cauchy_ds();
        while (k + 2 < s_at.size() && s_at[k + 1] < s)
            ++k;
        const double th = std::clamp((s - s_at[k]) / (s_at[k + 1] - s_at[k]), 0.0, 1.0);
        const double v = phi[k] + th * (phi[k + 1] - phi[k]);
        out[static_cast<std::size_t>(i)] = v;
        const double wt = (i == 0 || i == kCauchySamples - 1) ? 0.5 : 1.0;
        norm2 += wt * cauchy_ds() * v * v * w.gamma0(s);
    }
    const double nrm = std::sqrt(norm2);
    if (!(nrm > 0.0))
        throw DomainError("sweep: mode 1 vanishes on the channel");
    for (double& v : out)
        v /= nrm;
    return out;
}

double cauchy_distance(const WeightSpec& w, const std::vector<double>& a, const std::vector<double>& b)
{
    double dp = 0.0, dm = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double wt = (i == 0 || i + 1 == a.size()) ? 0.5 : 1.0;
        const double g = wt * cauchy_ds() * w.gamma0(static_cast<double>(i) * cauchy_ds());
        dp += g * (a[i] - b[i]) * (a[i] - b[i]);
        dm += g * (a[i] + b[i]) * (a[i] + b[i]);
    }
    return std::sqrt(std::min(dp, dm));
}

} // namespace

SweepReport sweep(const WeightSpec& w, const Profile& f, const std::vector<double>& eps_list, int n_max,
                  const SweepOptions& opts)
{
    if (eps_list.empty())
        throw ParameterError("sweep: eps list is empty");
    if (n_max < 1)
        throw ParameterError("sweep: n_max must be at least 1");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0) || eps_list[i] > 1.0)
            throw ParameterError("sweep: every eps must lie in (0, 1]");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw ParameterError("sweep: eps values must be strictly decreasing");
    }

    SweepReport rep;
    rep.eps = eps_list;
    rep.n_max = n_max;
    rep.nu = solve_neumann_1d_extrapolated(w, Interval1D(0.0, kInf), n_max, opts.sl1d).values;
    rep.C = richardson(solve_dirichlet_bound_constants(w, n_max, opts.sl1d, 0),
                       solve_dirichlet_bound_constants(w, n_max, opts.sl1d, 1));

    auto per_eps = [&](std::size_t i) {
        const double eps = eps_list[i];
        EpsResult out;
        try {
            const ThinMap map(f, eps);
            out.a = map.a_eps();
            if (out.a > 1.0)
                throw ParameterError("sweep: a_eps exceeds 1");
            const ProfileDomain pd{f, eps};
            const Truncation tr = std::isnan(opts.R) ? truncate(w, pd, opts.tail_tol) : truncate_at(w, pd, opts.R);
            const auto& pdt = std::get<ProfileDomain>(tr.domain);
            out.R = tr.radius;

            const bool ref = opts.reference_path;
            auto primary = [&](int level) {
                return ref ? solve_reference(w, map, pdt, opts, n_max, level)
                           : solve_physical(w, pdt, opts, n_max, level);
            };
            auto secondary = [&](int level) {
                return ref ? solve_physical(w, pdt, opts, n_max, level)
                           : solve_reference(w, map, pdt, opts, n_max, level);
            };
            const LevelResult coarse = primary(opts.refine);
            const LevelResult fine = primary(opts.refine + 1);
            std::vector<double> cross;
            if (opts.cross_check)
                cross = richardson(secondary(opts.refine).values, secondary(opts.refine + 1).values);
            const auto mu = richardson(coarse.values, fine.values);

            for (int n = 0; n <= n_max; ++n) {
                const auto k = static_cast<std::size_t>(n);
                SweepRow r;
                r.eps = eps;
                r.n = n;
                r.mu = mu[k];
                r.mu_coarse = coarse.values[k];
                r.mu_fine = fine.values[k];
                r.residual = fine.residuals[k];
                r.nu = rep.nu[k];
                r.C = rep.C[k];
                r.h = opts.h / static_cast<double>(1 << (opts.refine + 1));
                r.R = tr.radius;
                r.nodes = fine.mesh.vertices.size();
                if (opts.cross_check) {
                    r.mu_cross = cross[k];
                    r.cross_rel = n == 0 ? std::abs(cross[k] - mu[k])
                                         : std::abs(cross[k] - mu[k]) / std::abs(mu[k]);
                }
                if (n > 0)
                    r.defect = transverse_defect(w, map, fine.mesh, fine.vectors.col(n),
                                                 ref ? Coordinates::Reference : Coordinates::Physical)
                                   .defect;
                out.rows.push_back(r);
            }
            out.phi1 = channel_mean(w, map, fine.mesh, fine.vectors.col(1),
                                    ref ? Coordinates::Reference : Coordinates::Physical);
        } catch (const std::exception& e) {
            throw SolverError("sweep at eps = " + std::to_string(eps) + ": " + e.what());
        }
        return out;
    };
    const auto results = parallel_map<EpsResult>(eps_list.size(), per_eps);

    const double fp0 = f.fprime0();
    for (std::size_t i = 0; i < results.size(); ++i) {
        rep.a_eps.push_back(results[i].a);
        const double a = results[i].a, eps = eps_list[i];
        rep.sandwich.push_back(0.5 * fp0 * a <= eps * (1 + 1e-12) && eps <= fp0 * a * (1 + 1e-12));
        rep.rows.insert(rep.rows.end(), results[i].rows.begin(), results[i].rows.end());
    }

    rep.limits.resize(static_cast<std::size_t>(n_max) + 1);
    rep.monotone.assign(static_cast<std::size_t>(n_max) + 1, true);
    const std::size_t last = eps_list.size() - 1;
    for (int n = 0; n <= n_max; ++n) {
        const auto k = static_cast<std::size_t>(n);
        rep.limits[k] = last == 0 ? rep.row(0, n).mu
                                  : extrapolate_to_zero(eps_list[last - 1], rep.row(last - 1, n).mu,
                                                        eps_list[last], rep.row(last, n).mu);
        if (n > 0)
            for (std::size_t i = 1; i < eps_list.size(); ++i)
                if (!(std::abs(rep.row(i, n).mu - rep.nu[k]) < std::abs(rep.row(i - 1, n).mu - rep.nu[k])))
                    rep.monotone[k] = false;
    }
    for (const auto& r : rep.rows) {
        if (r.mu > 1.01 * r.C)
            rep.bound_ok = false;
        if (r.n > 0 && std::isfinite(r.cross_rel))
            rep.max_cross_rel = std::isnan(rep.max_cross_rel) ? r.cross_rel : std::max(rep.max_cross_rel, r.cross_rel);
    }
    for (std::size_t i = 0; i < eps_list.size(); ++i)
        rep.defects.push_back(rep.row(i, 1).defect);
    for (std::size_t i = 1; i < results.size(); ++i)
        rep.cauchy.push_back(cauchy_distance(w, results[i].phi1, results[i - 1].phi1));
    if (eps_list.size() >= 2 && std::all_of(rep.defects.begin(), rep.defects.end(), [](double d) { return d > 0.0; }))
        rep.defect_slope = loglog_slope(eps_list, rep.defects);
    return rep;
}

} // namespace gauss_neumann
