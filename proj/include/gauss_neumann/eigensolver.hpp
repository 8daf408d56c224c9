#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace gauss_neumann {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct EigenOptions {
    int count = 1;             ///< number of lowest eigenpairs wanted
    double shift = -0.5;       ///< shift-invert pole; must lie below the spectrum
    double tol = 1e-10;        ///< ||Kx - mu Mx|| <= tol ||Mx||, or the rounding floor of K x and M x if larger
    bool constant_kernel = true; ///< K annihilates constants (Neumann); lock it up front
    int krylov_dim = 0;        ///< 0 selects a size from `count`
    int max_restarts = 40;
    std::uint64_t seed = 0x5eed5eedULL;
};

struct EigenResult {
    std::vector<double> values;     ///< ascending
    Eigen::MatrixXd vectors;        ///< M-orthonormal columns
    std::vector<double> residuals;  ///< ||Kx - mu Mx|| / ||Mx||
    int restarts = 0;
    int solves = 0;
};

/// Lowest `count` eigenpairs of K x = mu M x (K symmetric PSD, M SPD) by
/// shift-invert Lanczos in the M inner product with full
/// reorthogonalization. Converged pairs are locked and deflated; a fresh
/// start orthogonal to the locked set is run until it finds nothing below
/// the largest wanted value, which recovers multiple eigenvalues.
EigenResult solve_lowest(const SparseMatrix& K, const SparseMatrix& M, const EigenOptions& opts);

/// Groups values within `rel_tol` (relative) into (value, multiplicity).
std::vector<std::pair<double, int>> group_multiplicities(const std::vector<double>& values,
                                                         double rel_tol = 1e-8);

} // namespace gauss_neumann
