#include "doctest.h"

#include <cmath>

#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/mesh.hpp"
#include "gauss_neumann/profile.hpp"

using namespace gauss_neumann;

TEST_SUITE("mesh") {

TEST_CASE("structured rectangle")
{
    MeshOptions o;
    o.h = 0.1;
    const TriMesh m = mesh_domain(WeightSpec{}, ConvexPolygon::rectangle(0, 1, 0, 1), o);
    CHECK(m.h_max <= 0.1 + 1e-12);
    CHECK(m.triangles.size() >= 200);
    const MeshCheck c = check_mesh(m, 1.0);
    CHECK(c.conforming);
    CHECK(c.oriented);
    CHECK(c.area_defect < 1e-13);
}

TEST_CASE("truncated strip is a rectangle")
{
    MeshOptions o;
    o.h = 0.25;
    o.R = 6.0;
    const TriMesh m = mesh_domain(WeightSpec{}, Strip{0, 1}, o);
    CHECK(m.truncation_radius == 6.0);
    CHECK(m.area() == doctest::Approx(12.0).epsilon(1e-13));
    CHECK(check_mesh(m, 12.0).conforming);
}

TEST_CASE("unstructured polygons")
{
    const ConvexPolygon hex({{1, 0}, {0.5, 0.8660254037844386}, {-0.5, 0.8660254037844386}, {-1, 0},
                             {-0.5, -0.8660254037844386}, {0.5, -0.8660254037844386}});
    const ConvexPolygon tri({{0, 0}, {3, 0}, {0.2, 1.5}});
    for (const auto* p : {&hex, &tri}) {
        const TriMesh m = mesh_convex_polygon(*p, 0.08);
        const MeshCheck c = check_mesh(m, p->area());
        CHECK(c.conforming);
        CHECK(c.oriented);
        CHECK(c.area_defect < 1e-12);
        CHECK(m.h_max <= 0.08);
        CHECK(c.min_angle_deg > 15.0);
    }
}

TEST_CASE("profile mesh is graded toward the origin")
{
    ProfileDomain p{Profile::linear(1.0), 0.1, 3.0};
    const TriMesh m = mesh_profile(p, 0.05, true);
    const MeshCheck c = check_mesh(m, 3.0 * 0.1 - 0.5 * 0.1 * 0.1);
    CHECK(c.conforming);
    CHECK(c.oriented);
    CHECK(c.area_defect < 1e-12);
    REQUIRE(m.corner);
    CHECK(m.corner->x == 0.0);
    double nearest = 1.0;
    for (const auto& v : m.vertices)
        if (v.x > 0)
            nearest = std::min(nearest, std::hypot(v.x, v.y));
    CHECK(nearest < 0.01);
    // columns include the kink of min(eps, f) at x = a
    const auto cols = profile_columns(p, 0.05, true);
    CHECK(std::count_if(cols.begin(), cols.end(), [](double x) { return std::abs(x - 0.1) < 1e-14; }) == 1);
}

TEST_CASE("uniform refinement keeps area and halves h")
{
    const TriMesh m = mesh_convex_polygon(ConvexPolygon({{0, 0}, {2, 0}, {0, 2}}), 0.2);
    const TriMesh r = refine_uniform(m);
    CHECK(r.triangles.size() == 4 * m.triangles.size());
    CHECK(r.area() == doctest::Approx(m.area()).epsilon(1e-14));
    CHECK(r.h_max == doctest::Approx(m.h_max / 2).epsilon(1e-12));
    CHECK(check_mesh(r, 2.0).conforming);
}

TEST_CASE("degenerate input")
{
    CHECK_THROWS(mesh_rectangle(0, 0, 0, 1, 4, 4));
}

}
