#include "doctest.h"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/sl1d.hpp"

using namespace gauss_neumann;

namespace {

// Dense second-order finite-volume discretization of -(g v')' = mu g v with
// natural ends; cell-centred mass, face-centred stiffness.
std::vector<double> dense_fd(double a, double b, double x0, int n, int count)
{
    const double h = (b - a) / n;
    auto g = [&](double s) { return std::exp(-(x0 + s) * (x0 + s) / 2); };
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + 1, n + 1), M = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
        const double c = g(a + (i + 0.5) * h) / h;
        K(i, i) += c;
        K(i + 1, i + 1) += c;
        K(i, i + 1) -= c;
        K(i + 1, i) -= c;
    }
    for (int i = 0; i <= n; ++i)
        M(i, i) = g(a + i * h) * ((i == 0 || i == n) ? h / 2 : h);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
    std::vector<double> out;
    for (int i = 0; i < count; ++i)
        out.push_back(es.eigenvalues()(i));
    return out;
}

}

TEST_SUITE("sl1d") {

TEST_CASE("Hermite spectrum on the line")
{
    Sl1dOptions o;
    o.R = 10;
    o.h = 0.01;
    const auto e = solve_neumann_1d_extrapolated(WeightSpec{}, Interval1D(-kInf, kInf), 4, o);
    for (int n = 0; n <= 4; ++n)
        CHECK(e.values[static_cast<std::size_t>(n)] == doctest::Approx(n).epsilon(1e-8).scale(1));
    CHECK(e.fine_spectrum.grid.truncation_radius == 10.0);
}

TEST_CASE("even Hermite spectrum on the half-line")
{
    Sl1dOptions o;
    o.h = 0.01;
    const auto e = solve_neumann_1d_extrapolated(WeightSpec{}, Interval1D(0, kInf), 2, o);
    for (int n = 0; n <= 2; ++n)
        CHECK(e.values[static_cast<std::size_t>(n)] == doctest::Approx(2 * n).epsilon(1e-8).scale(1));
}

TEST_CASE("bounded shifted interval agrees with a dense finite-difference solve")
{
    const double a = -0.5, b = 1.5, x0 = 0.7;
    Sl1dOptions o;
    o.h = 0.005;
    const auto e = solve_neumann_1d_extrapolated(WeightSpec{x0, 0}, Interval1D(a, b), 3, o);
    const auto fd = dense_fd(a, b, x0, 1600, 4);
    for (std::size_t n = 1; n < 4; ++n)
        CHECK(e.values[n] == doctest::Approx(fd[n]).epsilon(1e-5));
}

TEST_CASE("unweighted assembly reproduces the cosine spectrum")
{
    std::vector<double> nodes;
    for (int i = 0; i <= 400; ++i)
        nodes.push_back(2.0 * i / 400);
    auto [K, M] = assemble_1d(nodes, [](double) { return 1.0; }, [](double) { return 1.0; });
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(K), Eigen::MatrixXd(M)};
    for (int n = 1; n <= 3; ++n) {
        const double exact = std::pow(n * std::numbers::pi / 2, 2);
        CHECK(es.eigenvalues()(n) == doctest::Approx(exact).epsilon(1e-4));
    }
}

TEST_CASE("Dirichlet bound constants are sorted and positive")
{
    Sl1dOptions o;
    o.h = 0.01;
    const auto c = solve_dirichlet_bound_constants(WeightSpec{}, 3, o);
    REQUIRE(c.size() == 4);
    CHECK(c[0] > 0.0);
    for (std::size_t i = 1; i < c.size(); ++i)
        CHECK(c[i] > c[i - 1]);
}

TEST_CASE("richardson removes the quadratic term")
{
    const auto r = richardson({1.0 + 4e-2}, {1.0 + 1e-2});
    CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("invalid requests")
{
    Sl1dOptions o;
    o.h = 0.5;
    CHECK_THROWS_AS(solve_neumann_1d(WeightSpec{}, Interval1D(0, 1), 10, o), ParameterError);
    CHECK_THROWS_AS(Interval1D(1, 0), DomainError);
    o.h = -1;
    CHECK_THROWS_AS(solve_neumann_1d(WeightSpec{}, Interval1D(0, 1), 1, o), ParameterError);
}

}
