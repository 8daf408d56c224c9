#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gauss_neumann/profile.hpp"
#include "gauss_neumann/weights.hpp"

namespace gauss_neumann {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a);

/// Open interval (a, b) with possibly infinite endpoints.
struct Interval1D {
    double a;
    double b;

    Interval1D() : Interval1D(-kInf, kInf) {}
    Interval1D(double a, double b);
    bool bounded() const;
};

/// Open half-plane {p : p . normal < offset}. The cut line's outward
/// co-normal (seen from inside the half-plane) is `normal`.
struct HalfPlane {
    Point normal;
    double offset = 0.0;

    static HalfPlane from_angle(double alpha, double offset);
    double signed_distance(Point p) const { return dot(p, normal) - offset; }
    HalfPlane complement() const { return {-1.0 * normal, -offset}; }
};

/// Counterclockwise convex polygon, validated on construction.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Point> vertices);

    static ConvexPolygon rectangle(double x0, double x1, double y0, double y1);

    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    double area() const;
    double diameter() const;
    Point centroid() const;
    bool contains(Point p, double tol = 0.0) const;
    /// Axis-aligned bounding box {xmin, xmax, ymin, ymax}.
    std::array<double, 4> bounds() const;
    /// True when the polygon is an axis-aligned rectangle.
    bool is_axis_rectangle(double tol = 1e-12) const;

    /// Intersection with a half-plane; nullopt when the result has no area.
    std::optional<ConvexPolygon> clip(const HalfPlane& h) const;

private:
    std::vector<Point> vertices_;
};

/// Convex hull (Andrew's monotone chain), counterclockwise, collinear
/// points dropped.
std::vector<Point> convex_hull(std::vector<Point> points);

/// True if `pts` is a counterclockwise convex polygon under the
/// normalized-edge cross product test with tolerance `tol`.
bool is_convex_ccw(const std::vector<Point>& pts, double tol = 1e-12);

/// R x (y1, y2); either bound may be infinite.
struct Strip {
    double y1;
    double y2;
};

/// (x, +inf) x (y1, y2).
struct SemiStrip {
    double x;
    double y1;
    double y2;
};

/// {0 < x < x_max, 0 < y < min(eps, f(x))}. x_max is +inf until truncated.
struct ProfileDomain {
    Profile f;
    double eps;
    double x_max = kInf;
};

struct Plane {};

using Domain = std::variant<Strip, SemiStrip, ConvexPolygon, ProfileDomain, Plane>;

/// Validates invariants of the variant alternatives; throws DomainError.
void validate(const Domain& d);
bool is_bounded(const Domain& d);
std::string kind_name(const Domain& d);

/// Exact polygon diameter (all vertex pairs); +inf for unbounded kinds.
double diameter(const Domain& d);

/// Product set I x J containing the domain, used for tail bounds.
std::array<double, 4> enclosing_box(const Domain& d);

/// Gaussian mass of d lying outside the box centred at the weight centre
/// with half-width R (upper bound through the enclosing product set).
double tail_mass(const WeightSpec& w, const Domain& d, double R);

struct Truncation {
    Domain domain;          ///< bounded domain
    double radius = kInf;   ///< +inf when d was already bounded
};

Truncation truncate(const WeightSpec& w, const Domain& d, double tail_tol);

/// Truncation at a fixed radius R around the weight centre.
Truncation truncate_at(const WeightSpec& w, const Domain& d, double R);

/// Polygonal approximation of a bounded profile domain; exact for linear
/// and piecewise-linear profiles.
ConvexPolygon polygon_approximation(const ProfileDomain& p, int samples = 64);

/// Bounded domain as a polygon (truncated domains and polygons).
ConvexPolygon as_polygon(const Domain& bounded);

/// int_{a}^{b} exp(-(c+t)^2/2) dt, accurate in the tails.
double gauss_interval(double c, double a, double b);

/// Gaussian measure of a convex polygon by adaptive vertical slicing.
double gaussian_measure(const WeightSpec& w, const ConvexPolygon& poly, double tol);

/// m_gamma(d) to absolute tolerance tol; unbounded domains are truncated
/// with discarded tail below tol/10.
double gaussian_measure(const WeightSpec& w, const Domain& d, double tol);

/// int_poly f(x,y) gamma(x,y) dx dy by nested adaptive Gauss-Kronrod.
double integrate_weighted(const WeightSpec& w, const ConvexPolygon& poly,
                          const std::function<double(double, double)>& f, double tol);

struct EqualAreaCut {
    HalfPlane line;          ///< the "below" half {p . n < offset}
    double offset = 0.0;
    double measure_below = 0.0;
    double measure_total = 0.0;
    double truncation_radius = kInf;
};

/// Line {p . (cos a, sin a) = c} splitting d into halves of equal Gaussian
/// measure, to relative defect tol.
EqualAreaCut bisect_equal_area(const WeightSpec& w, const Domain& d, double direction_angle,
                               double tol);

/// int over (d intersect half) of u dm_gamma.
using HalfIntegral = std::function<double(const HalfPlane&)>;

struct ZeroMeanDirection {
    double alpha = 0.0;
    double offset = 0.0;
    double integral = 0.0;   ///< I(alpha) at the returned angle
    bool degenerate = false; ///< u is (numerically) zero
    // Bracketing certificate: I(alpha_lo) and I(alpha_hi) of opposite sign.
    double alpha_lo = 0.0;
    double integral_lo = 0.0;
    double alpha_hi = 0.0;
    double integral_hi = 0.0;
    int evaluations = 0;
};

/// Angle a in [0, pi] with |I(a)| <= tol * l1_norm where I(a) integrates u
/// over the equal-area half with outward co-normal (cos a, sin a).
ZeroMeanDirection find_zero_mean_direction(const WeightSpec& w, const Domain& d,
                                           const HalfIntegral& half_integral, double l1_norm,
                                           double tol);

/// Convenience overload for closed-form fields.
ZeroMeanDirection find_zero_mean_direction(const WeightSpec& w, const Domain& d,
                                           const std::function<double(double, double)>& u,
                                           double tol);

} // namespace gauss_neumann
