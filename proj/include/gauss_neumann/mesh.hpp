#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gauss_neumann/geometry.hpp"

namespace gauss_neumann {

/// Column-structured layout of profile and reference-strip meshes: column i
/// sits at abscissa `x[i]` and carries ny+1 nodes at t = j/ny. An optional
/// apex node (index 0) closes the leftmost column to a point.
struct ColumnLayout {
    std::vector<double> x;
    int ny = 0;
    bool apex = false;

    int node(std::size_t column, int j) const
    {
        return (apex ? 1 : 0) + static_cast<int>(column) * (ny + 1) + j;
    }
};

struct TriMesh {
    std::vector<Point> vertices;
    std::vector<std::array<int, 3>> triangles;      ///< counterclockwise
    std::vector<std::array<int, 2>> boundary_edges;

    double min_angle_deg = 0.0;         ///< outside the graded corner zone
    double corner_min_angle_deg = 180.0; ///< inside it (180 if no zone)
    double h_max = 0.0;                 ///< max over triangles of sqrt(2 |T|)
    double longest_edge = 0.0;
    double truncation_radius = kInf;
    std::string source;

    std::optional<Point> corner;        ///< centre of the graded zone
    double corner_radius = 0.0;

    std::optional<ColumnLayout> columns;

    double area() const;
    double triangle_area(std::size_t t) const;
    /// Recomputes quality metadata and boundary edges from the connectivity.
    void finalize();
};

struct MeshOptions {
    double h = 0.1;
    double tail_tol = 1e-10;
    double R = std::numeric_limits<double>::quiet_NaN(); ///< overrides tail_tol when set
    bool grading = true;
    int refine = 0; ///< each level halves the mesh size
};

/// Structured nx x ny grid of rectangles, each split along the diagonal.
TriMesh mesh_rectangle(double x0, double x1, double y0, double y1, int nx, int ny);

/// Delaunay triangulation of a convex polygon with boundary and interior
/// point spacing derived from h.
TriMesh mesh_convex_polygon(const ConvexPolygon& poly, double h);

/// Column mesh of a truncated profile domain with geometric grading toward
/// the corner at the origin when f(0) = 0.
TriMesh mesh_profile(const ProfileDomain& p, double h, bool grading, int refine = 0);

/// Column abscissae used by mesh_profile (x > 0 part; the apex is implicit).
std::vector<double> profile_columns(const ProfileDomain& p, double h, bool grading, int refine = 0);
int profile_rows(const ProfileDomain& p, double h, int refine = 0);

/// Red refinement: every triangle split into four similar ones.
TriMesh refine_uniform(const TriMesh& m);

/// Truncates d (if unbounded) and meshes it.
TriMesh mesh_domain(const WeightSpec& w, const Domain& d, const MeshOptions& opts);

struct MeshCheck {
    bool conforming = false;
    bool oriented = false;
    double area_defect = 0.0; ///< |area - expected| / expected
    double min_angle_deg = 0.0;
    double corner_min_angle_deg = 180.0;
};

MeshCheck check_mesh(const TriMesh& m, double expected_area);

} // namespace gauss_neumann
