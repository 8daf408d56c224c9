#include "gauss_neumann/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>
#include <unordered_set>

#include "delaunay.hpp"
#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/thinlimit.hpp"

namespace gauss_neumann {

namespace {

std::uint64_t edge_key(int a, int b)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

double angle_at(Point a, Point b, Point c)
{
    const Point u = b - a, v = c - a;
    return std::atan2(std::abs(cross(u, v)), dot(u, v)) * 180.0 / std::numbers::pi;
}

double min_angle(Point a, Point b, Point c)
{
    return std::min({angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b)});
}

double signed_area(Point a, Point b, Point c) { return 0.5 * cross(b - a, c - a); }

} // namespace

double TriMesh::triangle_area(std::size_t t) const
{
    const auto& v = triangles[t];
    return signed_area(vertices[static_cast<std::size_t>(v[0])], vertices[static_cast<std::size_t>(v[1])],
                       vertices[static_cast<std::size_t>(v[2])]);
}

double TriMesh::area() const
{
    // pairwise-style accumulation keeps the sum accurate for large meshes
    std::vector<double> parts(triangles.size());
    for (std::size_t t = 0; t < triangles.size(); ++t)
        parts[t] = triangle_area(t);
    for (std::size_t stride = 1; stride < parts.size(); stride *= 2)
        for (std::size_t i = 0; i + stride < parts.size(); i += 2 * stride)
            parts[i] += parts[i + stride];
    return parts.empty() ? 0.0 : parts[0];
}

void TriMesh::finalize()
{
    std::unordered_set<std::uint64_t> directed;
    directed.reserve(3 * triangles.size());
    for (const auto& t : triangles)
        for (int i = 0; i < 3; ++i)
            directed.insert(edge_key(t[i], t[(i + 1) % 3]));
    boundary_edges.clear();
    for (const auto& t : triangles)
        for (int i = 0; i < 3; ++i) {
            const int a = t[i], b = t[(i + 1) % 3];
            if (!directed.count(edge_key(b, a)))
                boundary_edges.push_back({a, b});
        }
    std::sort(boundary_edges.begin(), boundary_edges.end());

    min_angle_deg = 180.0;
    corner_min_angle_deg = 180.0;
    h_max = 0.0;
    longest_edge = 0.0;
    for (std::size_t k = 0; k < triangles.size(); ++k) {
        const auto& t = triangles[k];
        const Point a = vertices[static_cast<std::size_t>(t[0])];
        const Point b = vertices[static_cast<std::size_t>(t[1])];
        const Point c = vertices[static_cast<std::size_t>(t[2])];
        const double ang = min_angle(a, b, c);
        const Point centroid = (1.0 / 3.0) * (a + b + c);
        if (corner && norm(centroid - *corner) < corner_radius)
            corner_min_angle_deg = std::min(corner_min_angle_deg, ang);
        else
            min_angle_deg = std::min(min_angle_deg, ang);
        h_max = std::max(h_max, std::sqrt(2.0 * std::abs(signed_area(a, b, c))));
        longest_edge = std::max({longest_edge, norm(b - a), norm(c - b), norm(a - c)});
    }
}

TriMesh mesh_rectangle(double x0, double x1, double y0, double y1, int nx, int ny)
{
    if (!(x1 > x0) || !(y1 > y0) || nx < 1 || ny < 1)
        throw MeshError("mesh_rectangle: degenerate rectangle");
    TriMesh m;
    m.vertices.reserve(static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(ny + 1));
    for (int j = 0; j <= ny; ++j) {
        const double y = j == ny ? y1 : y0 + (y1 - y0) * j / ny;
        for (int i = 0; i <= nx; ++i) {
            const double x = i == nx ? x1 : x0 + (x1 - x0) * i / nx;
            m.vertices.push_back({x, y});
        }
    }
    auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
    m.triangles.reserve(2 * static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    m.source = "rectangle";
    m.finalize();
    return m;
}

namespace {

/// Interior point cloud plus boundary samples for a convex polygon.
struct PointCloud {
    std::vector<Point> boundary;
    std::vector<Point> interior;
};

PointCloud sample_polygon(const ConvexPolygon& poly, double s)
{
    PointCloud pc;
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = v[i], b = v[(i + 1) % n];
        const int k = std::max(1, static_cast<int>(std::ceil(norm(b - a) / s - 1e-9)));
        for (int j = 1; j < k; ++j)
            pc.boundary.push_back(a + (static_cast<double>(j) / k) * (b - a));
    }

    const auto box = poly.bounds();
    const double dy = s * std::sqrt(3.0) / 2.0;
    const double keep = 0.6 * s;
    const int rows = static_cast<int>(std::ceil((box[3] - box[2]) / dy)) + 1;
    const int cols = static_cast<int>(std::ceil((box[1] - box[0]) / s)) + 2;
    for (int r = 0; r <= rows; ++r) {
        const double y = box[2] + r * dy;
        std::vector<Point> row;
        for (int c = -1; c <= cols; ++c) {
            const Point p{box[0] + c * s + ((r & 1) ? 0.5 * s : 0.0), y};
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                const Point a = v[i], b = v[(i + 1) % n];
                const double dist = cross(b - a, p - a) / norm(b - a);
                ok = dist >= keep;
            }
            if (ok)
                row.push_back(p);
        }
        if (r & 1)
            std::reverse(row.begin(), row.end());
        pc.interior.insert(pc.interior.end(), row.begin(), row.end());
    }
    return pc;
}

TriMesh from_triangulation(detail::Triangulation tri)
{
    TriMesh m;
    m.vertices = std::move(tri.points);
    m.triangles = std::move(tri.triangles);
    // drop slivers of zero area that can appear between collinear hull points
    std::erase_if(m.triangles, [&](const std::array<int, 3>& t) {
        return signed_area(m.vertices[static_cast<std::size_t>(t[0])], m.vertices[static_cast<std::size_t>(t[1])],
                           m.vertices[static_cast<std::size_t>(t[2])]) <= 0.0;
    });
    m.finalize();
    return m;
}

void smooth_interior(std::vector<Point>& pts, std::size_t first_interior,
                     const std::vector<std::array<int, 3>>& tris)
{
    std::vector<Point> sum(pts.size(), Point{});
    std::vector<int> count(pts.size(), 0);
    for (const auto& t : tris)
        for (int i = 0; i < 3; ++i)
            for (int j = 1; j < 3; ++j) {
                const auto a = static_cast<std::size_t>(t[i]);
                sum[a] = sum[a] + pts[static_cast<std::size_t>(t[(i + j) % 3])];
                ++count[a];
            }
    for (std::size_t i = first_interior; i < pts.size(); ++i)
        if (count[i] > 0)
            pts[i] = (1.0 / count[i]) * sum[i];
}

TriMesh try_mesh_polygon(const ConvexPolygon& poly, double s, unsigned jitter_seed)
{
    PointCloud pc = sample_polygon(poly, s);
    if (jitter_seed != 0) {
        // tiny deterministic perturbation of interior points to escape cocircular ties
        std::uint64_t state = jitter_seed;
        for (auto& p : pc.interior) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            const double u = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            const double v = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
            p = p + Point{1e-3 * s * u, 1e-3 * s * v};
        }
    }
    std::vector<Point> pts = pc.boundary;
    pts.insert(pts.end(), pc.interior.begin(), pc.interior.end());
    const std::size_t first_interior = poly.size() + pc.boundary.size();

    auto tri = detail::delaunay(poly.vertices(), pts);
    for (int round = 0; round < 2; ++round) {
        smooth_interior(tri.points, first_interior, tri.triangles);
        std::vector<Point> moved(tri.points.begin() + static_cast<std::ptrdiff_t>(poly.size()), tri.points.end());
        tri = detail::delaunay(poly.vertices(), moved);
    }
    return from_triangulation(std::move(tri));
}

/// Drops vertices that close an edge shorter than `merge`; such edges come
/// from cuts passing next to a corner and would force sliver triangles.
ConvexPolygon drop_short_edges(const ConvexPolygon& poly, double merge)
{
    std::vector<Point> v = poly.vertices();
    bool changed = true;
    while (changed && v.size() > 3) {
        changed = false;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (norm(v[(i + 1) % v.size()] - v[i]) < merge) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>((i + 1) % v.size()));
                changed = true;
                break;
            }
    }
    return ConvexPolygon(std::move(v));
}

} // namespace

TriMesh mesh_convex_polygon(const ConvexPolygon& input, double h)
{
    if (!(h > 0.0))
        throw ParameterError("mesh_convex_polygon: h must be positive");
    if (input.area() <= 0.0)
        throw MeshError("mesh_convex_polygon: zero-area polygon");
    const ConvexPolygon poly = drop_short_edges(input, 1e-3 * h);
    double s = 0.8 * h;
    const double area = poly.area();
    for (int attempt = 0; attempt < 12; ++attempt) {
        TriMesh m;
        try {
            m = try_mesh_polygon(poly, s, static_cast<unsigned>(attempt));
        } catch (const MeshError&) {
            continue;
        }
        const auto chk = check_mesh(m, area);
        if (!chk.conforming || !chk.oriented || chk.area_defect > 1e-10)
            continue;
        if (m.h_max > h) {
            s *= 0.9;
            continue;
        }
        m.source = "polygon";
        return m;
    }
    throw MeshError("mesh_convex_polygon: triangulation failed");
}

// ---------------------------------------------------------------------------
// Profile domains

int profile_rows(const ProfileDomain& p, double h, int refine)
{
    if (!(h > 0.0))
        throw ParameterError("profile mesh: h must be positive");
    const int base = std::max(4, static_cast<int>(std::ceil(p.eps / h - 1e-12)));
    return base << refine;
}

std::vector<double> profile_columns(const ProfileDomain& p, double h, bool grading, int refine)
{
    if (!std::isfinite(p.x_max))
        throw DomainError("profile mesh: domain must be truncated");
    const double a = compute_a_eps(p.f, p.eps);
    const int ny = profile_rows(p, h, 0);
    const bool apex = p.f(0.0) <= 0.0;
    auto fe = [&](double x) { return std::min(p.eps, p.f(x)); };

    const double channel_dx = std::min(h, 2.5 * p.eps / ny);
    auto spacing = [&](double x) {
        if (x >= a)
            return channel_dx;
        double d = 2.5 * fe(x) / ny;
        if (apex && grading)
            d = std::min(fe(x) / ny, 0.5 * x);
        return std::clamp(d, h / 100.0, h);
    };

    std::vector<double> breaks{0.0, p.x_max};
    if (a > 0.0 && a < p.x_max)
        breaks.push_back(a);
    for (double k : p.f.kinks())
        if (k > 0.0 && k < p.x_max)
            breaks.push_back(k);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::vector<double> xs;
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
        const double lo = breaks[b], hi = breaks[b + 1];
        if (lo >= a) {
            const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / channel_dx - 1e-9)));
            for (int i = 0; i < n; ++i)
                xs.push_back(lo + (hi - lo) * i / n);
            continue;
        }
        // graded walk from hi down to lo
        std::vector<double> seg;
        double x = hi;
        while (true) {
            const double d = spacing(x);
            const double next = x - d;
            if (next <= lo + 0.5 * spacing(std::max(next, lo)))
                break;
            seg.push_back(next);
            x = next;
        }
        xs.push_back(lo);
        xs.insert(xs.end(), seg.rbegin(), seg.rend());
    }
    xs.push_back(p.x_max);
    if (apex)
        xs.erase(xs.begin()); // the apex replaces the degenerate column at x = 0

    for (int r = 0; r < refine; ++r) {
        std::vector<double> finer;
        finer.reserve(2 * xs.size());
        if (apex)
            finer.push_back(0.5 * xs[0]);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            finer.push_back(xs[i]);
            if (i + 1 < xs.size())
                finer.push_back(0.5 * (xs[i] + xs[i + 1]));
        }
        xs = std::move(finer);
    }
    return xs;
}

TriMesh mesh_profile(const ProfileDomain& p, double h, bool grading, int refine)
{
    const auto xs = profile_columns(p, h, grading, refine);
    const int ny = profile_rows(p, h, refine);
    const bool apex = p.f(0.0) <= 0.0;
    ColumnLayout layout{xs, ny, apex};

    TriMesh m;
    if (apex)
        m.vertices.push_back({0.0, 0.0});
    for (double x : xs) {
        const double top = std::min(p.eps, p.f(x));
        if (!(top > 0.0))
            throw MeshError("mesh_profile: column of zero height");
        for (int j = 0; j <= ny; ++j)
            m.vertices.push_back({x, j == ny ? top : top * j / ny});
    }
    if (apex)
        for (int j = 0; j < ny; ++j)
            m.triangles.push_back({0, layout.node(0, j), layout.node(0, j + 1)});
    for (std::size_t c = 0; c + 1 < xs.size(); ++c)
        for (int j = 0; j < ny; ++j) {
            const int a = layout.node(c, j), b = layout.node(c + 1, j);
            const int bc = layout.node(c + 1, j + 1), ac = layout.node(c, j + 1);
            m.triangles.push_back({a, b, bc});
            m.triangles.push_back({a, bc, ac});
        }
    if (apex) {
        m.corner = Point{0.0, 0.0};
        m.corner_radius = compute_a_eps(p.f, p.eps);
    }
    m.columns = std::move(layout);
    m.source = "profile";
    m.finalize();
    return m;
}

TriMesh refine_uniform(const TriMesh& in)
{
    TriMesh m;
    m.vertices = in.vertices;
    std::unordered_map<std::uint64_t, int> mid;
    mid.reserve(3 * in.triangles.size());
    auto midpoint = [&](int a, int b) {
        const auto k = edge_key(std::min(a, b), std::max(a, b));
        auto it = mid.find(k);
        if (it != mid.end())
            return it->second;
        const int id = static_cast<int>(m.vertices.size());
        m.vertices.push_back(0.5 * (in.vertices[static_cast<std::size_t>(a)] + in.vertices[static_cast<std::size_t>(b)]));
        mid.emplace(k, id);
        return id;
    };
    m.triangles.reserve(4 * in.triangles.size());
    for (const auto& t : in.triangles) {
        const int ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
        m.triangles.push_back({t[0], ab, ca});
        m.triangles.push_back({ab, t[1], bc});
        m.triangles.push_back({ca, bc, t[2]});
        m.triangles.push_back({ab, bc, ca});
    }
    m.truncation_radius = in.truncation_radius;
    m.source = in.source;
    m.corner = in.corner;
    m.corner_radius = in.corner_radius;
    m.finalize();
    return m;
}

namespace {

TriMesh mesh_bounded_polygon(const ConvexPolygon& poly, double h, int refine)
{
    if (poly.is_axis_rectangle()) {
        const auto b = poly.bounds();
        const int nx = std::max(1, static_cast<int>(std::ceil((b[1] - b[0]) / h - 1e-9)));
        const int ny = std::max(1, static_cast<int>(std::ceil((b[3] - b[2]) / h - 1e-9)));
        return mesh_rectangle(b[0], b[1], b[2], b[3], nx << refine, ny << refine);
    }
    TriMesh m = mesh_convex_polygon(poly, h);
    for (int r = 0; r < refine; ++r)
        m = refine_uniform(m);
    return m;
}

} // namespace

TriMesh mesh_domain(const WeightSpec& w, const Domain& d, const MeshOptions& opts)
{
    if (!(opts.h > 0.0))
        throw ParameterError("mesh_domain: h must be positive");
    if (opts.refine < 0 || opts.refine > 8)
        throw ParameterError("mesh_domain: refine must be in [0, 8]");
    validate(d);
    const Truncation tr = std::isnan(opts.R) ? truncate(w, d, opts.tail_tol) : truncate_at(w, d, opts.R);

    TriMesh m;
    if (const auto* p = std::get_if<ProfileDomain>(&tr.domain))
        m = mesh_profile(*p, opts.h, opts.grading, opts.refine);
    else
        m = mesh_bounded_polygon(std::get<ConvexPolygon>(tr.domain), opts.h, opts.refine);
    m.truncation_radius = tr.radius;
    m.source = kind_name(d);
    return m;
}

MeshCheck check_mesh(const TriMesh& m, double expected_area)
{
    MeshCheck c;
    c.min_angle_deg = m.min_angle_deg;
    c.corner_min_angle_deg = m.corner_min_angle_deg;

    c.oriented = true;
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        if (!(m.triangle_area(t) > 0.0))
            c.oriented = false;

    // every directed edge used once; undirected edges by at most two triangles
    std::unordered_map<std::uint64_t, int> directed;
    bool conforming = !m.triangles.empty();
    for (const auto& t : m.triangles)
        for (int i = 0; i < 3; ++i) {
            if (t[i] < 0 || static_cast<std::size_t>(t[i]) >= m.vertices.size())
                return c;
            if (++directed[edge_key(t[i], t[(i + 1) % 3])] > 1)
                conforming = false;
        }
    std::size_t edges = 0;
    std::map<int, int> boundary_degree;
    for (const auto& [k, n] : directed) {
        const int a = static_cast<int>(k >> 32), b = static_cast<int>(k & 0xffffffffu);
        if (directed.count(edge_key(b, a))) {
            if (a < b)
                ++edges;
        } else {
            ++edges;
            ++boundary_degree[a];
            ++boundary_degree[b];
        }
    }
    for (const auto& [v, deg] : boundary_degree)
        if (deg != 2)
            conforming = false;
    std::vector<char> used(m.vertices.size(), 0);
    for (const auto& t : m.triangles)
        for (int v : t)
            used[static_cast<std::size_t>(v)] = 1;
    if (std::count(used.begin(), used.end(), 0) != 0)
        conforming = false;
    const long euler = static_cast<long>(m.vertices.size()) - static_cast<long>(edges) +
                       static_cast<long>(m.triangles.size());
    if (euler != 1)
        conforming = false;
    c.conforming = conforming;
    c.area_defect = expected_area > 0.0 ? std::abs(m.area() - expected_area) / expected_area : kInf;
    return c;
}

} // namespace gauss_neumann
