#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/fem2d.hpp"
#include "gauss_neumann/sl1d.hpp"

using namespace gauss_neumann;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

double phi_interval(double a, double b)
{
    return std::sqrt(std::numbers::pi / 2) * (std::erf(b / std::sqrt(2.0)) - std::erf(a / std::sqrt(2.0)));
}

}

TEST_SUITE("fem2d") {

TEST_CASE("triangle rule is exact through degree six")
{
    const TriangleRule& rule = triangle_rule();
    double wsum = 0.0;
    for (double w : rule.weights)
        wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
    // int over the unit right triangle of x^a y^b = a! b! / (a + b + 2)!
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; a + b <= 6; ++b) {
            double q = 0.0;
            for (std::size_t i = 0; i < rule.weights.size(); ++i) {
                const double x = rule.barycentric[i][1], y = rule.barycentric[i][2];
                q += rule.weights[i] * std::pow(x, a) * std::pow(y, b);
            }
            q *= 0.5;
            CHECK(q == doctest::Approx(factorial(a) * factorial(b) / factorial(a + b + 2)).epsilon(1e-13));
        }
}

TEST_CASE("mass matrix integrates the weight")
{
    const WeightSpec w{0.2, -0.1};
    const TriMesh m = mesh_rectangle(-1, 1, 0, 2, 20, 20);
    const DiscretePair km = assemble(w, m);
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m.vertices.size()));
    const double exact = phi_interval(-0.8, 1.2) * phi_interval(-0.1, 1.9);
    CHECK(one.dot(km.M * one) == doctest::Approx(exact).epsilon(1e-7));
    CHECK((km.K * one).norm() < 1e-13);
    CHECK((SparseMatrix(km.K.transpose()) - km.K).norm() == 0.0);
    CHECK(weighted_mean(w, m, one) == doctest::Approx(exact).epsilon(1e-7));
    CHECK(rayleigh_quotient(km, one) == doctest::Approx(0.0).scale(1));
    CHECK_THROWS_AS(rayleigh_quotient(km, Eigen::VectorXd::Zero(one.size())), DomainError);
}

TEST_CASE("rectangle spectrum equals sorted sums of interval spectra")
{
    Fem2dOptions o;
    o.h = 0.1;
    const auto e2 = solve_neumann_2d_extrapolated(WeightSpec{}, ConvexPolygon::rectangle(-1, 1, 0, 2), 5, o);
    Sl1dOptions s;
    s.h = 0.0025;
    const auto ex = solve_neumann_1d_extrapolated(WeightSpec{}, Interval1D(-1, 1), 5, s);
    const auto ey = solve_neumann_1d_extrapolated(WeightSpec{}, Interval1D(0, 2), 5, s);
    std::vector<double> sums;
    for (double a : ex.values)
        for (double b : ey.values)
            sums.push_back(a + b);
    std::sort(sums.begin(), sums.end());
    for (std::size_t i = 1; i < 6; ++i)
        CHECK(e2.values[i] == doctest::Approx(sums[i]).epsilon(1e-4));
}

TEST_CASE("eigenvector quotient and half integrals")
{
    Fem2dOptions o;
    o.h = 0.1;
    const Spectrum2D sp = solve_neumann_2d(WeightSpec{}, ConvexPolygon::rectangle(-1, 1, -1, 1), 2, o);
    const Eigen::VectorXd u = sp.eigenvectors.col(1);
    CHECK(rayleigh_quotient(WeightSpec{}, sp.mesh, u) == doctest::Approx(sp.eigenvalues[1]).epsilon(1e-12));
    CHECK(std::abs(weighted_mean(WeightSpec{}, sp.mesh, u)) < 1e-10);

    // x restricted to the right half: exact via erf
    const Eigen::VectorXd x = interpolate(sp.mesh, [](double px, double) { return px; });
    const HalfIntegrals right = integrate_half(WeightSpec{}, sp.mesh, x, HalfPlane::from_angle(std::numbers::pi, 0.0));
    const double exact = (1 - std::exp(-0.5)) * phi_interval(-1, 1);
    CHECK(right.u == doctest::Approx(exact).epsilon(1e-8));
    CHECK(right.measure == doctest::Approx(phi_interval(0, 1) * phi_interval(-1, 1)).epsilon(1e-6));
    const HalfIntegrals all = integrate_all(WeightSpec{}, sp.mesh, x);
    CHECK(std::abs(all.u) < 1e-12);
    CHECK(all.grad2 == doctest::Approx(all.measure).epsilon(1e-12));
}

TEST_CASE("strip: centred x is nearly optimal")
{
    Fem2dOptions o;
    o.h = 0.1;
    o.R = 6.0;
    const Spectrum2D sp = solve_neumann_2d(WeightSpec{}, Strip{0, 1}, 1, o);
    Eigen::VectorXd x = interpolate(sp.mesh, [](double px, double) { return px; });
    const double mean = weighted_mean(WeightSpec{}, sp.mesh, x) / integrate_all(WeightSpec{}, sp.mesh, x).measure;
    x.array() -= mean;
    const double q = rayleigh_quotient(WeightSpec{}, sp.mesh, x);
    CHECK(q >= sp.eigenvalues[1] - 1e-12);
    CHECK(q == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("doubling the truncation radius leaves the strip spectrum unchanged")
{
    Fem2dOptions o;
    o.h = 0.1;
    const Spectrum2D base = solve_neumann_2d(WeightSpec{}, Strip{0, 1}, 2, o);
    o.R = 2 * base.mesh.truncation_radius;
    const Spectrum2D wide = solve_neumann_2d(WeightSpec{}, Strip{0, 1}, 2, o);
    for (std::size_t i = 1; i < 3; ++i)
        CHECK(std::abs(wide.eigenvalues[i] - base.eigenvalues[i]) < 1e-6);
}

TEST_CASE("nested refinement decreases mu1 at second order")
{
    Sl1dOptions s;
    s.h = 0.00125;
    const double exact = solve_neumann_1d_extrapolated(WeightSpec{}, Interval1D(-1, 1), 1, s).values[1];
    TriMesh m = mesh_rectangle(-1, 1, -1, 1, 10, 10);
    std::vector<double> h, err;
    double prev = kInf;
    for (int level = 0; level < 4; ++level) {
        const Spectrum2D sp = solve_on_mesh(WeightSpec{}, m, 1, 1e-11);
        CHECK(sp.eigenvalues[1] <= prev + 1e-10);
        prev = sp.eigenvalues[1];
        h.push_back(m.h_max);
        err.push_back(sp.eigenvalues[1] - exact);
        m = refine_uniform(m);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(h.size());
    const double order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
}

TEST_CASE("plane spectrum has Hermite multiplicities")
{
    Fem2dOptions o;
    o.h = 0.2;
    o.R = 8.0;
    const auto e = solve_neumann_2d_extrapolated(WeightSpec{}, Plane{}, 5, o);
    const std::vector<double> expect{0, 1, 1, 2, 2, 2};
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(e.values[i] == doctest::Approx(expect[i]).epsilon(1e-3).scale(1));
}

TEST_CASE("vtk output")
{
    const TriMesh m = mesh_rectangle(0, 1, 0, 1, 2, 2);
    std::ostringstream os;
    write_vtk(os, m, {{"u", Eigen::VectorXd::Zero(9)}});
    CHECK(os.str().find("POINTS 9") != std::string::npos);
    CHECK(os.str().find("CELLS 8") != std::string::npos);
}

}
