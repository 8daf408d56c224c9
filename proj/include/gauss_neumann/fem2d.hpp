#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gauss_neumann/eigensolver.hpp"
#include "gauss_neumann/geometry.hpp"
#include "gauss_neumann/mesh.hpp"
#include "gauss_neumann/weights.hpp"

namespace gauss_neumann {

/// Stiffness int gamma grad(phi_i).grad(phi_j) and mass int gamma phi_i phi_j.
struct DiscretePair {
    SparseMatrix K;
    SparseMatrix M;
};

/// Symmetric 12-point rule on the reference triangle, exact for degree 6.
struct TriangleRule {
    std::array<std::array<double, 3>, 12> barycentric;
    std::array<double, 12> weights; ///< sum to 1
};
const TriangleRule& triangle_rule();

DiscretePair assemble(const WeightSpec& w, const TriMesh& m);

struct Fem2dOptions {
    double h = 0.05;
    double tail_tol = 1e-10;
    double R = std::numeric_limits<double>::quiet_NaN();
    double tol = 1e-10;
    bool grading = true;
    int refine = 0;
};

struct Spectrum2D {
    std::vector<double> eigenvalues;
    Eigen::MatrixXd eigenvectors; ///< nodal fields, M-orthonormal columns
    std::vector<double> residuals;
    std::vector<std::pair<double, int>> multiplicities;
    TriMesh mesh;
    double tol = 0.0;
};

/// First k+1 eigenpairs on an existing mesh.
Spectrum2D solve_on_mesh(const WeightSpec& w, TriMesh mesh, int k, double tol);

Spectrum2D solve_neumann_2d(const WeightSpec& w, const Domain& d, int k, const Fem2dOptions& opts);

/// Solves at refinement levels r and r+1 and extrapolates with order 2.
struct Extrapolated2D {
    std::vector<double> values;
    std::vector<double> coarse;
    std::vector<double> fine;
    std::vector<double> error_estimate; ///< |fine - values|
    Spectrum2D fine_spectrum;
};

Extrapolated2D solve_neumann_2d_extrapolated(const WeightSpec& w, const Domain& d, int k,
                                             const Fem2dOptions& opts);

/// u^T K u / u^T M u; throws DomainError for a zero field.
double rayleigh_quotient(const WeightSpec& w, const TriMesh& m, const Eigen::VectorXd& u);
double rayleigh_quotient(const DiscretePair& km, const Eigen::VectorXd& u);

/// 1^T M u = int u dm_gamma.
double weighted_mean(const WeightSpec& w, const TriMesh& m, const Eigen::VectorXd& u);

/// Nodal interpolant of a closed-form field.
Eigen::VectorXd interpolate(const TriMesh& m, const std::function<double(double, double)>& f);

/// Integrals of a P1 field over the part of the mesh inside a half-plane.
struct HalfIntegrals {
    double u = 0.0;       ///< int u dm_gamma
    double abs_u = 0.0;   ///< int |u| dm_gamma (quadrature of |u|)
    double u2 = 0.0;      ///< int u^2 dm_gamma
    double grad2 = 0.0;   ///< int |grad u|^2 dm_gamma
    double measure = 0.0; ///< int dm_gamma
};

HalfIntegrals integrate_half(const WeightSpec& w, const TriMesh& m, const Eigen::VectorXd& u,
                             const HalfPlane& half);

/// Whole-mesh version of integrate_half.
HalfIntegrals integrate_all(const WeightSpec& w, const TriMesh& m, const Eigen::VectorXd& u);

/// Legacy ASCII VTK unstructured grid with one point-data array per field.
void write_vtk(std::ostream& os, const TriMesh& m,
               const std::vector<std::pair<std::string, Eigen::VectorXd>>& fields);

} // namespace gauss_neumann
