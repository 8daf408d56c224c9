#pragma once

#include <limits>
#include <vector>

#include "gauss_neumann/fem2d.hpp"
#include "gauss_neumann/geometry.hpp"
#include "gauss_neumann/mesh.hpp"
#include "gauss_neumann/profile.hpp"
#include "gauss_neumann/sl1d.hpp"
#include "gauss_neumann/weights.hpp"

namespace gauss_neumann {

/// a_eps = inf { x : min(eps, f(x)) = eps }, by bisection to 1e-14 relative.
/// Zero when f(0) >= eps; ParameterError unless 0 < eps < sup f.
double compute_a_eps(const Profile& f, double eps);

/// The change of variables (s, t) -> (g(s), f_eps(g(s)) t) from the
/// reference strip (-1, inf) x (0, 1) onto the thin domain. When a_eps = 0
/// the collar s < 0 is absent and g(s) = s.
class ThinMap {
public:
    ThinMap(Profile f, double eps);

    const Profile& profile() const { return f_; }
    double eps() const { return eps_; }
    double a_eps() const { return a_; }
    bool has_collar() const { return a_ > 0.0; }
    double s_min() const { return has_collar() ? -1.0 : 0.0; }

    double g(double s) const;
    /// Right derivative at s = 0.
    double g_prime(double s) const;
    double g_inverse(double x) const;

    double f_eps(double x) const;
    /// Right derivative of min(eps, f).
    double f_eps_prime(double x) const;

    /// Closure of the reference strip allowed; DomainError outside it.
    Point to_physical(double s, double t) const;

    /// g'(s) f_eps(g(s)).
    double jacobian(double s) const;

    /// Profile kinks and s = 0, in reference coordinates.
    std::vector<double> reference_kinks() const;

private:
    Profile f_;
    double eps_;
    double a_;
};

Point map_L_eps(const ThinMap& t, double s, double u);
double jacobian(const ThinMap& t, double s);

/// Column mesh of (s_min + delta, S) x (0, 1) whose columns are the
/// pull-backs of the physical profile mesh columns, so both meshes share
/// the kink lines and the row structure. `physical` must be truncated.
TriMesh reference_strip_mesh(const ThinMap& t, const ProfileDomain& physical, double h, bool grading,
                             int refine, double delta = 1e-3);

/// Discretization of the transformed form h_eps and its weighted mass on a
/// reference strip mesh. Throws MeshError if a triangle straddles a kink.
DiscretePair assemble_h_eps(const WeightSpec& w, const ThinMap& t, const TriMesh& reference_mesh);

enum class Coordinates { Physical, Reference };

struct TransverseDefect {
    double defect = 0.0;          ///< ||eta|| / ||psi|| on the channel part
    double eta_norm = 0.0;
    double psi_norm = 0.0;
    double max_mean_residual = 0.0; ///< max over columns of |int_0^1 eta dt|
};

/// Splits a column-structured mode psi = phi(s) + eta(s, t) with
/// int_0^1 eta dt = 0 and measures eta in the weighted norm on s > 0.
TransverseDefect transverse_defect(const WeightSpec& w, const ThinMap& t, const TriMesh& mesh,
                                   const Eigen::VectorXd& psi, Coordinates coords);

struct SweepOptions {
    double h = 0.02;
    int refine = 0;           ///< coarse level; the fine level is refine + 1
    double tail_tol = 1e-10;
    double R = std::numeric_limits<double>::quiet_NaN();
    double tol = 1e-10;
    bool grading = true;
    bool reference_path = false; ///< eigenvalues from h_eps instead of the physical mesh
    bool cross_check = false;    ///< also run the other path and record the deviation
    double delta_cut = 1e-3;
    Sl1dOptions sl1d{};
};

struct SweepRow {
    double eps = 0.0;
    int n = 0;
    double mu = 0.0;          ///< h-extrapolated
    double mu_coarse = 0.0;
    double mu_fine = 0.0;
    double residual = 0.0;    ///< fine-level residual
    double mu_cross = std::numeric_limits<double>::quiet_NaN();
    double cross_rel = std::numeric_limits<double>::quiet_NaN();
    double nu = 0.0;
    double C = 0.0;
    double defect = 0.0;
    double h = 0.0;
    double R = kInf;
    std::size_t nodes = 0;
};

struct SweepReport {
    std::vector<double> eps;
    std::vector<double> a_eps;
    int n_max = 0;
    std::vector<SweepRow> rows;      ///< ordered by eps, then n
    std::vector<double> nu;          ///< 1D half-line references
    std::vector<double> C;           ///< Dirichlet bound constants
    std::vector<double> limits;      ///< eps -> 0 extrapolations
    std::vector<bool> monotone;      ///< |mu_n - nu_n| decreasing along the sweep
    std::vector<bool> sandwich;      ///< f'(0) a / 2 <= eps <= f'(0) a per eps
    bool bound_ok = true;            ///< mu_n <= 1.01 C_n everywhere
    std::vector<double> defects;     ///< mode-1 transverse defect per eps
    double defect_slope = std::numeric_limits<double>::quiet_NaN();
    /// Distance between consecutive mode-1 transverse means on s in [0, 4],
    /// each normalized and sign-aligned; shrinks as the modes converge.
    std::vector<double> cauchy;
    double max_cross_rel = std::numeric_limits<double>::quiet_NaN();

    const SweepRow& row(std::size_t eps_index, int n) const;
};

/// Linear extrapolation to zero through the last two points (x, y).
double extrapolate_to_zero(double x1, double y1, double x2, double y2);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

SweepReport sweep(const WeightSpec& w, const Profile& f, const std::vector<double>& eps_list, int n_max,
                  const SweepOptions& opts);

} // namespace gauss_neumann
