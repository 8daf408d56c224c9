#include "delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "gauss_neumann/errors.hpp"

namespace gauss_neumann::detail {

namespace {

using Real = long double;

Real orient(Point a, Point b, Point c)
{
    return (static_cast<Real>(b.x) - a.x) * (static_cast<Real>(c.y) - a.y) -
           (static_cast<Real>(b.y) - a.y) * (static_cast<Real>(c.x) - a.x);
}

/// > 0 when d lies strictly inside the circumcircle of the ccw triangle abc.
Real incircle(Point a, Point b, Point c, Point d)
{
    const Real adx = static_cast<Real>(a.x) - d.x, ady = static_cast<Real>(a.y) - d.y;
    const Real bdx = static_cast<Real>(b.x) - d.x, bdy = static_cast<Real>(b.y) - d.y;
    const Real cdx = static_cast<Real>(c.x) - d.x, cdy = static_cast<Real>(c.y) - d.y;
    const Real ad = adx * adx + ady * ady;
    const Real bd = bdx * bdx + bdy * bdy;
    const Real cd = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

std::uint64_t key(int a, int b)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

class Builder {
public:
    explicit Builder(double scale) : scale_(scale) {}

    std::vector<Point> pts;
    std::vector<std::array<int, 3>> tris;
    std::vector<char> alive;

    int add_triangle(int a, int b, int c)
    {
        int id;
        if (!free_.empty()) {
            id = free_.back();
            free_.pop_back();
            tris[static_cast<std::size_t>(id)] = {a, b, c};
            alive[static_cast<std::size_t>(id)] = 1;
        } else {
            id = static_cast<int>(tris.size());
            tris.push_back({a, b, c});
            alive.push_back(1);
        }
        edges_[key(a, b)] = id;
        edges_[key(b, c)] = id;
        edges_[key(c, a)] = id;
        last_ = id;
        return id;
    }

    void remove_triangle(int id)
    {
        const auto& t = tris[static_cast<std::size_t>(id)];
        for (int i = 0; i < 3; ++i) {
            auto it = edges_.find(key(t[i], t[(i + 1) % 3]));
            if (it != edges_.end() && it->second == id)
                edges_.erase(it);
        }
        alive[static_cast<std::size_t>(id)] = 0;
        free_.push_back(id);
    }

    int across(int a, int b) const
    {
        auto it = edges_.find(key(b, a));
        return it == edges_.end() ? -1 : it->second;
    }

    Point P(int i) const { return pts[static_cast<std::size_t>(i)]; }

    bool in_circle(int t, Point p) const
    {
        const auto& v = tris[static_cast<std::size_t>(t)];
        return incircle(P(v[0]), P(v[1]), P(v[2]), p) > 0;
    }

    /// Lawson flips until every interior edge is locally Delaunay.
    void legalize_all()
    {
        bool flipped = true;
        int guard = 0;
        while (flipped && guard++ < 10000) {
            flipped = false;
            for (std::size_t t = 0; t < tris.size(); ++t) {
                if (!alive[t])
                    continue;
                for (int i = 0; i < 3 && !flipped; ++i) {
                    const int a = tris[t][i], b = tris[t][(i + 1) % 3], c = tris[t][(i + 2) % 3];
                    const int u = across(a, b);
                    if (u < 0)
                        continue;
                    const auto& tu = tris[static_cast<std::size_t>(u)];
                    int d = -1;
                    for (int k = 0; k < 3; ++k)
                        if (tu[k] != a && tu[k] != b)
                            d = tu[k];
                    if (incircle(P(a), P(b), P(c), P(d)) > 0 && orient(P(a), P(d), P(c)) > 0 &&
                        orient(P(d), P(b), P(c)) > 0) {
                        remove_triangle(static_cast<int>(t));
                        remove_triangle(u);
                        add_triangle(a, d, c);
                        add_triangle(d, b, c);
                        flipped = true;
                    }
                }
                if (flipped)
                    break;
            }
        }
    }

    int locate(Point p) const
    {
        int t = last_;
        if (t < 0 || !alive[static_cast<std::size_t>(t)]) {
            t = 0;
            while (!alive[static_cast<std::size_t>(t)])
                ++t;
        }
        const Real tol = static_cast<Real>(1e-13) * scale_ * scale_;
        for (std::size_t steps = 0; steps < 4 * tris.size() + 16; ++steps) {
            const auto& v = tris[static_cast<std::size_t>(t)];
            int next = -1;
            for (int i = 0; i < 3; ++i) {
                const int a = v[(i + static_cast<int>(steps)) % 3];
                const int b = v[(i + static_cast<int>(steps) + 1) % 3];
                if (orient(P(a), P(b), p) < -tol) {
                    next = across(a, b);
                    if (next < 0)
                        throw MeshError("delaunay: point outside the hull");
                    break;
                }
            }
            if (next < 0)
                return t;
            t = next;
        }
        throw MeshError("delaunay: point location did not terminate");
    }

    void insert(int pi)
    {
        const Point p = P(pi);
        const int start = locate(p);
        std::vector<int> cavity{start};
        std::vector<char> in_cavity(tris.size(), 0);
        in_cavity[static_cast<std::size_t>(start)] = 1;
        for (std::size_t k = 0; k < cavity.size(); ++k) {
            const auto v = tris[static_cast<std::size_t>(cavity[k])];
            for (int i = 0; i < 3; ++i) {
                const int u = across(v[i], v[(i + 1) % 3]);
                if (u < 0 || in_cavity[static_cast<std::size_t>(u)])
                    continue;
                if (in_circle(u, p)) {
                    in_cavity[static_cast<std::size_t>(u)] = 1;
                    cavity.push_back(u);
                }
            }
        }
        // boundary edges of the cavity
        std::vector<std::array<int, 2>> rim;
        for (int t : cavity) {
            const auto& v = tris[static_cast<std::size_t>(t)];
            for (int i = 0; i < 3; ++i) {
                const int u = across(v[i], v[(i + 1) % 3]);
                if (u < 0 || !in_cavity[static_cast<std::size_t>(u)])
                    rim.push_back({v[i], v[(i + 1) % 3]});
            }
        }
        for (int t : cavity)
            remove_triangle(t);
        const Real tol = static_cast<Real>(1e-13) * scale_ * scale_;
        for (const auto& e : rim) {
            const Real o = orient(P(e[0]), P(e[1]), p);
            if (std::abs(o) <= tol && across(e[1], e[0]) < 0 && edges_.find(key(e[1], e[0])) == edges_.end())
                continue; // p lies on this hull edge; it splits into two hull edges
            if (o <= tol)
                throw MeshError("delaunay: cavity is not star-shaped");
            add_triangle(e[0], e[1], pi);
        }
    }

private:
    double scale_;
    std::unordered_map<std::uint64_t, int> edges_;
    std::vector<int> free_;
    int last_ = -1;
};

} // namespace

Triangulation delaunay(const std::vector<Point>& hull, const std::vector<Point>& points)
{
    if (hull.size() < 3)
        throw MeshError("delaunay: hull needs at least three corners");
    double xmin = hull[0].x, xmax = hull[0].x, ymin = hull[0].y, ymax = hull[0].y;
    for (const auto& p : hull) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    Builder b(std::max(xmax - xmin, ymax - ymin));
    b.pts = hull;
    b.pts.insert(b.pts.end(), points.begin(), points.end());
    for (std::size_t i = 1; i + 1 < hull.size(); ++i)
        b.add_triangle(0, static_cast<int>(i), static_cast<int>(i + 1));
    b.legalize_all();
    for (std::size_t i = hull.size(); i < b.pts.size(); ++i)
        b.insert(static_cast<int>(i));

    Triangulation out;
    out.points = std::move(b.pts);
    for (std::size_t t = 0; t < b.tris.size(); ++t)
        if (b.alive[t])
            out.triangles.push_back(b.tris[t]);
    return out;
}

} // namespace gauss_neumann::detail
