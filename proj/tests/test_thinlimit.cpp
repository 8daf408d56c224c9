#include "doctest.h"

#include <cmath>

#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/thinlimit.hpp"

using namespace gauss_neumann;

TEST_SUITE("thinlimit") {

TEST_CASE("a_eps")
{
    CHECK(compute_a_eps(Profile::linear(1.0), 0.1) == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(compute_a_eps(Profile::linear(2.0), 0.1) == doctest::Approx(0.05).epsilon(1e-13));
    CHECK(compute_a_eps(Profile::tanh(1.0), 0.1) == doctest::Approx(std::atanh(0.1)).epsilon(1e-13));
    CHECK(compute_a_eps(Profile::piecewise_linear({{0, 0}, {1, 0.5}, {3, 1}}), 0.75) ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK_THROWS_AS(compute_a_eps(Profile::tanh(1.0), 1.5), ParameterError);
    CHECK_THROWS_AS(compute_a_eps(Profile::linear(1.0), -0.1), ParameterError);
}

TEST_CASE("map onto the thin domain")
{
    const ThinMap t(Profile::linear(1.0), 0.1);
    const Point p = map_L_eps(t, 1, 0.5);
    CHECK(p.x == doctest::Approx(1.1));
    CHECK(p.y == doctest::Approx(0.05));
    const Point q = map_L_eps(t, -0.5, 1);
    CHECK(q.x == doctest::Approx(0.05));
    CHECK(q.y == doctest::Approx(0.05));
    for (const Profile& f : {Profile::linear(1.0), Profile::tanh(3.0)}) {
        const ThinMap tf(f, 0.2);
        const Point o = map_L_eps(tf, -1, 0.3);
        CHECK(o.x == doctest::Approx(0.0).scale(1));
        CHECK(o.y == doctest::Approx(0.0).scale(1));
    }
    CHECK_THROWS_AS(map_L_eps(t, -1.2, 0.5), DomainError);
    CHECK_THROWS_AS(map_L_eps(t, 0.5, -0.1), DomainError);
    for (double x : {0.0, 0.03, 0.1, 0.7, 4.0})
        CHECK(t.g(t.g_inverse(x)) == doctest::Approx(x).epsilon(1e-14).scale(1));
}

TEST_CASE("jacobian")
{
    const ThinMap t(Profile::linear(1.0), 0.1);
    CHECK(jacobian(t, 2.0) == doctest::Approx(0.1));
    CHECK(jacobian(t, -0.5) == doctest::Approx(0.005));
    CHECK(jacobian(t, -1.0 + 1e-9) < 1e-9);
    const ThinMap tt(Profile::tanh(1.0), 0.3);
    CHECK(jacobian(tt, 2.0) == doctest::Approx(0.3));
    // against a finite-difference area element of the map
    const double s = -0.4, d = 1e-6;
    const Point a = map_L_eps(tt, s - d, 0.5), b = map_L_eps(tt, s + d, 0.5);
    const Point c = map_L_eps(tt, s, 0.5 - d), e = map_L_eps(tt, s, 0.5 + d);
    const double det = ((b.x - a.x) * (e.y - c.y) - (b.y - a.y) * (e.x - c.x)) / (4 * d * d);
    CHECK(jacobian(tt, s) == doctest::Approx(det).epsilon(1e-6));
}

TEST_CASE("jacobian equals eps on the channel")
{
    const std::vector<Profile> profiles{Profile::linear(1.0), Profile::linear(3.0), Profile::tanh(2.0),
                                        Profile::piecewise_linear({{0, 0}, {0.2, 0.3}, {1, 0.6}})};
    for (const Profile& f : profiles)
        for (double eps : {0.05, 0.2, 0.45}) {
            const ThinMap t(f, eps);
            for (int i = 1; i <= 100; ++i) {
                const double s = 0.07 * i;
                CHECK(jacobian(t, s) == doctest::Approx(eps).epsilon(1e-14));
            }
        }
}

TEST_CASE("positive f(0) drops the collar")
{
    const ThinMap t(Profile::piecewise_linear({{0, 0.5}, {1, 1.0}}), 0.3);
    CHECK(t.a_eps() == 0.0);
    CHECK_FALSE(t.has_collar());
    CHECK(t.s_min() == 0.0);
    CHECK(t.g(0.7) == doctest::Approx(0.7));
    CHECK(jacobian(t, 0.0) == doctest::Approx(0.3));
    CHECK_THROWS_AS(map_L_eps(t, -0.5, 0.5), DomainError);
}

TEST_CASE("h_eps form matches the physical discretization")
{
    const WeightSpec w{};
    const Profile f = Profile::linear(1.0);
    const double eps = 0.2;
    const ThinMap t(f, eps);
    ProfileDomain phys{f, eps, 9.0};
    const TriMesh ref = reference_strip_mesh(t, phys, 0.05, true, 0);
    const DiscretePair km = assemble_h_eps(w, t, ref);
    EigenOptions eo;
    eo.count = 3;
    const EigenResult r = solve_lowest(km.K, km.M, eo);
    Fem2dOptions o;
    o.h = 0.05;
    o.R = 9.0;
    const Spectrum2D sp = solve_neumann_2d(w, ProfileDomain{f, eps}, 2, o);
    for (std::size_t i = 1; i < 3; ++i)
        CHECK(r.values[i] == doctest::Approx(sp.eigenvalues[i]).epsilon(1e-3));
}

TEST_CASE("transverse defect of the constant mode vanishes")
{
    const WeightSpec w{};
    const ThinMap t(Profile::linear(1.0), 0.2);
    ProfileDomain phys{Profile::linear(1.0), 0.2, 8.0};
    const TriMesh ref = reference_strip_mesh(t, phys, 0.1, true, 0);
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(ref.vertices.size()));
    const TransverseDefect d = transverse_defect(w, t, ref, one, Coordinates::Reference);
    CHECK(d.defect == doctest::Approx(0.0).scale(1));
    CHECK(d.psi_norm > 0.0);
    // a purely transverse field is all defect
    const Eigen::VectorXd tr = interpolate(ref, [](double, double s_t) { return s_t - 0.5; });
    CHECK(transverse_defect(w, t, ref, tr, Coordinates::Reference).defect == doctest::Approx(1.0).epsilon(1e-2));
    CHECK_THROWS_AS(transverse_defect(w, t, ref, Eigen::VectorXd::Zero(one.size()), Coordinates::Reference), DomainError);
}

TEST_CASE("extrapolation helpers")
{
    CHECK(extrapolate_to_zero(0.2, 3.0, 0.1, 2.5) == doctest::Approx(2.0));
    CHECK(loglog_slope({0.4, 0.2, 0.1}, {1.6, 0.4, 0.1}) == doctest::Approx(2.0));
}

TEST_CASE("small sweep")
{
    SweepOptions o;
    o.h = 0.05;
    const SweepReport r = sweep(WeightSpec{}, Profile::linear(1.0), {0.4, 0.2}, 1, o);
    CHECK(r.nu[1] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(r.rows.size() == 4);
    CHECK(r.row(1, 1).mu < r.row(0, 1).mu);
    CHECK(r.row(1, 1).mu > r.nu[1]);
    CHECK(r.bound_ok);
    CHECK(r.sandwich[0]);
    CHECK(r.limits[1] == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("mode-1 channel profiles form a Cauchy sequence")
{
    SweepOptions o;
    o.h = 0.05;
    const SweepReport r = sweep(WeightSpec{}, Profile::linear(1.0), {0.4, 0.2, 0.1}, 1, o);
    REQUIRE(r.cauchy.size() == 2);
    CHECK(r.cauchy[1] < r.cauchy[0]);
    CHECK(r.cauchy[0] < 0.2);
}

}
