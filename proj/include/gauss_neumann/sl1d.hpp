#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "gauss_neumann/eigensolver.hpp"
#include "gauss_neumann/geometry.hpp"
#include "gauss_neumann/weights.hpp"

namespace gauss_neumann {

/// Nodes of a 1D piecewise-linear discretization of a (truncated) interval.
struct Grid1D {
    Interval1D interval;              ///< the interval as requested
    std::vector<double> nodes;        ///< strictly increasing
    double truncation_radius = kInf;  ///< +inf when no endpoint was infinite

    double h() const;
    std::size_t size() const { return nodes.size(); }
};

struct Sl1dOptions {
    double R = std::numeric_limits<double>::quiet_NaN(); ///< fixed truncation radius; NaN derives it from tail_tol
    double tail_tol = 1e-12;
    double h = 1e-2;
    double tol = 1e-10;
};

struct Spectrum1D {
    std::vector<double> eigenvalues;
    Eigen::MatrixXd eigenvectors;  ///< nodal values, M-orthonormal columns
    std::vector<double> residuals;
    Grid1D grid;
    double tol = 0.0;
};

/// Uniform grid on iv; infinite endpoints are replaced by centre -/+ R where
/// the weight centre is -x0. A radius derived from tail_tol is widened for
/// the highest wanted mode index `modes`.
Grid1D make_grid(const WeightSpec& w, const Interval1D& iv, const Sl1dOptions& opts, int refine = 0,
                 int modes = 0);

using Weight1D = std::function<double(double)>;

/// P1 stiffness int p phi_i' phi_j' and mass int q phi_i phi_j, element
/// integrals by 5-point Gauss-Legendre.
std::pair<SparseMatrix, SparseMatrix> assemble_1d(const std::vector<double>& nodes, const Weight1D& stiffness_weight,
                                                  const Weight1D& mass_weight);

/// First k+1 eigenpairs of -(g v')' = mu g v on iv with natural (Neumann)
/// ends, g(s) = exp(-(x0+s)^2/2).
Spectrum1D solve_neumann_1d(const WeightSpec& w, const Interval1D& iv, int k, const Sl1dOptions& opts,
                            int refine = 0);

/// First k+1 Dirichlet eigenvalues on (0, +inf) of the operator with
/// stiffness weight gamma_+ and mass weight gamma_-.
std::vector<double> solve_dirichlet_bound_constants(const WeightSpec& w, int k, const Sl1dOptions& opts,
                                                    int refine = 0);

/// Eigenvalues at h and h/2 combined as (4 mu(h/2) - mu(h)) / 3.
struct Extrapolated1D {
    std::vector<double> values;
    std::vector<double> coarse;
    std::vector<double> fine;
    std::vector<double> error_estimate; ///< |fine - values|
    Spectrum1D fine_spectrum;
};

Extrapolated1D solve_neumann_1d_extrapolated(const WeightSpec& w, const Interval1D& iv, int k,
                                             const Sl1dOptions& opts);

std::vector<double> richardson(const std::vector<double>& coarse, const std::vector<double>& fine, double order = 2.0);

} // namespace gauss_neumann
