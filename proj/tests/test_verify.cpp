#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/verify.hpp"

using namespace gauss_neumann;

namespace {

double min_corner_deg(const ConvexPolygon& p)
{
    const auto& v = p.vertices();
    double m = 180.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point a = v[(i + v.size() - 1) % v.size()], b = v[i], c = v[(i + 1) % v.size()];
        const Point u{a.x - b.x, a.y - b.y}, w{c.x - b.x, c.y - b.y};
        m = std::min(m, std::acos(dot(u, w) / (norm(u) * norm(w))) * 180 / std::numbers::pi);
    }
    return m;
}

}

TEST_SUITE("verify") {

TEST_CASE("uniform01 uses the top 53 bits")
{
    std::mt19937_64 a(42), b(42);
    const double u = uniform01(a);
    CHECK(u == static_cast<double>(b() >> 11) * 0x1.0p-53);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
}

TEST_CASE("corpus is reproducible and well shaped")
{
    const auto c1 = random_corpus(42, 20);
    const auto c2 = random_corpus(42, 20);
    REQUIRE(c1.size() == 20);
    for (std::size_t i = 0; i < c1.size(); ++i) {
        CHECK(c1[i].vertices().size() == c2[i].vertices().size());
        CHECK(c1[i].area() == c2[i].area());
        CHECK(is_convex_ccw(c1[i].vertices()));
        CHECK(min_corner_deg(c1[i]) >= 20.0);
        CHECK(c1[i].area() >= 0.1);
    }
    CHECK(random_corpus(43, 1)[0].area() != c1[0].area());
}

TEST_CASE("lower bound on simple domains")
{
    VerifyOptions o;
    o.h = 0.1;
    const auto sq = check_lower_bound(WeightSpec{}, ConvexPolygon::rectangle(-1, 1, -1, 1), o);
    CHECK(sq.pass);
    Sl1dOptions s;
    s.h = 0.0025;
    const double nu = solve_neumann_1d_extrapolated(WeightSpec{}, Interval1D(-1, 1), 1, s).values[1];
    CHECK(sq.mu1 == doctest::Approx(nu).epsilon(1e-5));

    o.R = 7.0;
    const auto semi = check_lower_bound(WeightSpec{}, SemiStrip{0, 0, 1}, o);
    CHECK(semi.pass);
    CHECK(semi.mu1 == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("diameter bound")
{
    VerifyOptions o;
    const auto r = check_diameter_bound(WeightSpec{}, ConvexPolygon::rectangle(-1, 1, -1, 1), o);
    CHECK(r.pass);
    CHECK(r.diameter == doctest::Approx(2 * std::sqrt(2.0)));
    CHECK(r.margin > 0.0);
    CHECK_THROWS_AS(check_diameter_bound(WeightSpec{}, Strip{0, 1}, o), ParameterError);
}

TEST_CASE("strictness family")
{
    VerifyOptions o;
    o.R = 6.0;
    const ConvexPolygon flat = strictness_domain(WeightSpec{}, 0.0, o);
    CHECK(flat.is_axis_rectangle());
    const ConvexPolygon bent = strictness_domain(WeightSpec{}, 1.0, o);
    CHECK(bent.contains({-0.45, 0.5}));
    CHECK_FALSE(bent.contains({-0.45, 0.1}));
}

TEST_CASE("unknown suite")
{
    CHECK_THROWS_AS(run_suite("nope", 1, VerifyOptions{}), ParameterError);
}

}
