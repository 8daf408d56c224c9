#include "doctest.h"

#include <random>

#include <Eigen/Eigenvalues>

#include "gauss_neumann/eigensolver.hpp"

using namespace gauss_neumann;

namespace {

SparseMatrix diagonal(const std::vector<double>& d)
{
    SparseMatrix m(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
        m.insert(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    m.makeCompressed();
    return m;
}

}

TEST_SUITE("eigensolver") {

TEST_CASE("repeated eigenvalues are all recovered")
{
    std::vector<double> k{5, 1, 1, 0.5, 3, 1, 7, 2, 2, 9, 11, 12};
    std::vector<double> m(k.size(), 1.0);
    EigenOptions o;
    o.count = 6;
    o.constant_kernel = false;
    const EigenResult r = solve_lowest(diagonal(k), diagonal(m), o);
    const std::vector<double> expect{0.5, 1, 1, 1, 2, 2};
    REQUIRE(r.values.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(r.values[i] == doctest::Approx(expect[i]).epsilon(1e-10));
    CHECK(group_multiplicities(r.values) == std::vector<std::pair<double, int>>{{0.5, 1}, {1.0, 3}, {2.0, 2}});
}

TEST_CASE("matches a dense generalized solve")
{
    const int n = 60;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    // weighted path-graph Laplacian (constant kernel) and a diagonal mass
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n), M = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        const double c = u(rng);
        K(i, i) += c;
        K(i + 1, i + 1) += c;
        K(i, i + 1) -= c;
        K(i + 1, i) -= c;
    }
    for (int i = 0; i < n; ++i)
        M(i, i) = u(rng);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dense(K, M);

    EigenOptions o;
    o.count = 5;
    const EigenResult r = solve_lowest(K.sparseView(), M.sparseView(), o);
    REQUIRE(r.values.size() == 5);
    CHECK(std::abs(r.values[0]) < 1e-10);
    for (int i = 1; i < 5; ++i)
        CHECK(r.values[static_cast<std::size_t>(i)] == doctest::Approx(dense.eigenvalues()(i)).epsilon(1e-9));
    for (double res : r.residuals)
        CHECK(res <= 1e-10);
    const Eigen::MatrixXd G = r.vectors.transpose() * M * r.vectors;
    CHECK((G - Eigen::MatrixXd::Identity(5, 5)).norm() < 1e-10);
}

}
