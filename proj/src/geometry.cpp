#include "gauss_neumann/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/thinlimit.hpp"

namespace gauss_neumann {

namespace {

using GaussKronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr unsigned kMaxDepth = 18;

double relative_tol(double tol)
{
    return std::clamp(0.1 * tol / (2.0 * std::numbers::pi), 1e-14, 1e-8);
}

template <class F>
double integrate_1d(F&& f, double a, double b, double rel)
{
    if (!(b > a))
        return 0.0;
    return GaussKronrod::integrate(f, a, b, kMaxDepth, rel);
}

/// Lower/upper boundary lines of a convex polygon on each vertical slab.
struct Slab {
    double x_lo, x_hi;
    // y = c0 + c1 x
    double low_c0, low_c1;
    double up_c0, up_c1;

    double low(double x) const { return low_c0 + low_c1 * x; }
    double up(double x) const { return up_c0 + up_c1 * x; }
};

std::vector<Slab> slabs_of(const ConvexPolygon& poly)
{
    const auto& v = poly.vertices();
    std::vector<double> xs;
    xs.reserve(v.size());
    for (const auto& p : v)
        xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Slab> out;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double xm = 0.5 * (xs[k] + xs[k + 1]);
        Slab s{xs[k], xs[k + 1], 0, 0, 0, 0};
        double ylo = kInf, yhi = -kInf;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point p = v[i];
            const Point q = v[(i + 1) % v.size()];
            const double lo = std::min(p.x, q.x), hi = std::max(p.x, q.x);
            if (!(lo <= xm && xm <= hi) || p.x == q.x)
                continue;
            const double c1 = (q.y - p.y) / (q.x - p.x);
            const double c0 = p.y - c1 * p.x;
            const double y = c0 + c1 * xm;
            if (y < ylo) {
                ylo = y;
                s.low_c0 = c0;
                s.low_c1 = c1;
            }
            if (y > yhi) {
                yhi = y;
                s.up_c0 = c0;
                s.up_c1 = c1;
            }
        }
        out.push_back(s);
    }
    return out;
}

double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

} // namespace

double norm(Point a) { return std::hypot(a.x, a.y); }

Interval1D::Interval1D(double a_, double b_) : a(a_), b(b_)
{
    if (std::isnan(a) || std::isnan(b) || !(a < b))
        throw DomainError("Interval1D: require a < b");
    if (a == kInf || b == -kInf)
        throw DomainError("Interval1D: invalid infinite endpoint");
}

bool Interval1D::bounded() const { return std::isfinite(a) && std::isfinite(b); }

HalfPlane HalfPlane::from_angle(double alpha, double offset)
{
    return {{std::cos(alpha), std::sin(alpha)}, offset};
}

bool is_convex_ccw(const std::vector<Point>& pts, double tol)
{
    const std::size_t n = pts.size();
    if (n < 3)
        return false;
    bool any_turn = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = pts[i];
        const Point b = pts[(i + 1) % n];
        const Point e = b - a;
        const double len = norm(e);
        if (len == 0.0)
            return false;
        const Point en = (1.0 / len) * e;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || j == (i + 1) % n)
                continue;
            const Point d = pts[j] - a;
            const double dl = norm(d);
            if (dl == 0.0)
                return false;
            const double c = cross(en, (1.0 / dl) * d);
            if (c < -tol)
                return false;
            if (c > tol)
                any_turn = true;
        }
    }
    return any_turn;
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices))
{
    if (vertices_.size() < 3)
        throw DomainError("ConvexPolygon: need at least 3 vertices");
    for (const auto& p : vertices_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw DomainError("ConvexPolygon: non-finite vertex");
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            if (vertices_[i] == vertices_[j])
                throw DomainError("ConvexPolygon: repeated vertex");
    if (!is_convex_ccw(vertices_))
        throw DomainError("ConvexPolygon: vertices are not a counterclockwise convex polygon");
}

ConvexPolygon ConvexPolygon::rectangle(double x0, double x1, double y0, double y1)
{
    return ConvexPolygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

double ConvexPolygon::area() const
{
    double a = 0.0;
    const Point o = vertices_.front();
    for (std::size_t i = 1; i + 1 < vertices_.size(); ++i)
        a += orient(o, vertices_[i], vertices_[i + 1]);
    return 0.5 * a;
}

double ConvexPolygon::diameter() const
{
    double d = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            d = std::max(d, norm(vertices_[i] - vertices_[j]));
    return d;
}

Point ConvexPolygon::centroid() const
{
    double a = 0.0, cx = 0.0, cy = 0.0;
    const Point o = vertices_.front();
    for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
        const double t = orient(o, vertices_[i], vertices_[i + 1]);
        a += t;
        cx += t * (o.x + vertices_[i].x + vertices_[i + 1].x) / 3.0;
        cy += t * (o.y + vertices_[i].y + vertices_[i + 1].y) / 3.0;
    }
    return {cx / a, cy / a};
}

bool ConvexPolygon::contains(Point p, double tol) const
{
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Point a = vertices_[i];
        const Point b = vertices_[(i + 1) % vertices_.size()];
        if (cross(b - a, p - a) < -tol * norm(b - a))
            return false;
    }
    return true;
}

std::array<double, 4> ConvexPolygon::bounds() const
{
    std::array<double, 4> b{kInf, -kInf, kInf, -kInf};
    for (const auto& p : vertices_) {
        b[0] = std::min(b[0], p.x);
        b[1] = std::max(b[1], p.x);
        b[2] = std::min(b[2], p.y);
        b[3] = std::max(b[3], p.y);
    }
    return b;
}

bool ConvexPolygon::is_axis_rectangle(double tol) const
{
    if (vertices_.size() != 4)
        return false;
    const auto b = bounds();
    const double scale = std::max({1.0, std::abs(b[0]), std::abs(b[1]), std::abs(b[2]), std::abs(b[3])});
    for (const auto& p : vertices_) {
        const bool on_x = std::abs(p.x - b[0]) <= tol * scale || std::abs(p.x - b[1]) <= tol * scale;
        const bool on_y = std::abs(p.y - b[2]) <= tol * scale || std::abs(p.y - b[3]) <= tol * scale;
        if (!on_x || !on_y)
            return false;
    }
    return true;
}

std::optional<ConvexPolygon> ConvexPolygon::clip(const HalfPlane& h) const
{
    std::vector<Point> out;
    const std::size_t n = vertices_.size();
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = vertices_[i];
        const Point q = vertices_[(i + 1) % n];
        const double dp = h.signed_distance(p);
        const double dq = h.signed_distance(q);
        if (dp <= 0.0)
            out.push_back(p);
        if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
            const double t = dp / (dp - dq);
            out.push_back(p + t * (q - p));
        }
    }
    const auto b = bounds();
    const double scale = std::max(b[1] - b[0], b[3] - b[2]);
    const double merge = 1e-13 * scale;
    std::vector<Point> clean;
    for (const auto& p : out)
        if (clean.empty() || norm(p - clean.back()) > merge)
            clean.push_back(p);
    while (clean.size() > 1 && norm(clean.front() - clean.back()) <= merge)
        clean.pop_back();
    // drop collinear vertices
    bool changed = true;
    while (changed && clean.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < clean.size(); ++i) {
            const Point a = clean[(i + clean.size() - 1) % clean.size()];
            const Point c = clean[(i + 1) % clean.size()];
            const Point e1 = clean[i] - a, e2 = c - clean[i];
            if (std::abs(cross(e1, e2)) <= 1e-14 * norm(e1) * norm(e2)) {
                clean.erase(clean.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    if (clean.size() < 3)
        return std::nullopt;
    double a = 0.0;
    for (std::size_t i = 1; i + 1 < clean.size(); ++i)
        a += orient(clean[0], clean[i], clean[i + 1]);
    if (!(0.5 * a > 1e-14 * scale * scale))
        return std::nullopt;
    return ConvexPolygon(std::move(clean));
}

std::vector<Point> convex_hull(std::vector<Point> pts)
{
    std::sort(pts.begin(), pts.end(),
              [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        return pts;
    std::vector<Point> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0.0)
            --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && orient(h[k - 2], h[k - 1], pts[i - 1]) <= 0.0)
            --k;
        h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    return h;
}

// ---------------------------------------------------------------------------
// Domains

void validate(const Domain& d)
{
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Strip>) {
                if (std::isnan(v.y1) || std::isnan(v.y2) || !(v.y1 < v.y2))
                    throw DomainError("Strip: require y1 < y2");
            } else if constexpr (std::is_same_v<T, SemiStrip>) {
                if (!std::isfinite(v.x))
                    throw DomainError("SemiStrip: left endpoint must be finite");
                if (!std::isfinite(v.y1) || !std::isfinite(v.y2) || !(v.y1 < v.y2))
                    throw DomainError("SemiStrip: require finite y1 < y2");
            } else if constexpr (std::is_same_v<T, ProfileDomain>) {
                if (!(v.eps > 0.0) || !(v.eps < v.f.sup()))
                    throw DomainError("ProfileDomain: require 0 < eps < sup f");
                if (!(v.x_max > 0.0))
                    throw DomainError("ProfileDomain: x_max must be positive");
            }
        },
        d);
}

bool is_bounded(const Domain& d)
{
    if (std::holds_alternative<ConvexPolygon>(d))
        return true;
    if (const auto* p = std::get_if<ProfileDomain>(&d))
        return std::isfinite(p->x_max);
    return false;
}

std::string kind_name(const Domain& d)
{
    static const char* names[] = {"strip", "semistrip", "polygon", "profile", "plane"};
    return names[d.index()];
}

double diameter(const Domain& d)
{
    if (const auto* p = std::get_if<ConvexPolygon>(&d))
        return p->diameter();
    if (const auto* p = std::get_if<ProfileDomain>(&d); p && std::isfinite(p->x_max))
        return polygon_approximation(*p).diameter();
    return kInf;
}

std::array<double, 4> enclosing_box(const Domain& d)
{
    return std::visit(
        [](const auto& v) -> std::array<double, 4> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Strip>)
                return {-kInf, kInf, v.y1, v.y2};
            else if constexpr (std::is_same_v<T, SemiStrip>)
                return {v.x, kInf, v.y1, v.y2};
            else if constexpr (std::is_same_v<T, ConvexPolygon>)
                return v.bounds();
            else if constexpr (std::is_same_v<T, ProfileDomain>)
                return {0.0, v.x_max, 0.0, v.eps};
            else
                return {-kInf, kInf, -kInf, kInf};
        },
        d);
}

double gauss_interval(double c, double a, double b)
{
    if (!(b > a))
        return 0.0;
    constexpr double k = std::numbers::sqrt2 / 2.0;
    const double scale = std::sqrt(std::numbers::pi / 2.0);
    const double u = (c + a) * k;
    const double v = (c + b) * k;
    if (u >= 0.0)
        return scale * (std::erfc(u) - std::erfc(v));
    if (v <= 0.0)
        return scale * (std::erfc(-v) - std::erfc(-u));
    return scale * (std::erf(v) - std::erf(u));
}

namespace {

/// Mass of the interval [lo, hi] outside the window [wlo, whi].
double outside_mass(double c, double lo, double hi, double wlo, double whi)
{
    double m = 0.0;
    if (lo < wlo)
        m += gauss_interval(c, lo, std::min(hi, wlo));
    if (hi > whi)
        m += gauss_interval(c, std::max(lo, whi), hi);
    return m;
}

} // namespace

double tail_mass(const WeightSpec& w, const Domain& d, double R)
{
    const auto box = enclosing_box(d);
    const double cx = w.centre_x(), cy = w.centre_y();
    const double gy = gauss_interval(w.y0, box[2], box[3]);
    const double gx_in = gauss_interval(w.x0, std::max(box[0], cx - R), std::min(box[1], cx + R));
    const double gx_out = outside_mass(w.x0, box[0], box[1], cx - R, cx + R);
    const double gy_out = outside_mass(w.y0, box[2], box[3], cy - R, cy + R);
    // m(IxJ) - m(I'xJ') = (gx - gx_in) gy + gx_in (gy - gy_in)
    return gx_out * gy + gx_in * gy_out;
}

Truncation truncate(const WeightSpec& w, const Domain& d, double tail_tol)
{
    if (!(tail_tol > 0.0))
        throw ParameterError("truncate: tail_tol must be positive");
    validate(d);
    if (is_bounded(d))
        return {d, kInf};

    double hi = 1.0;
    while (tail_mass(w, d, hi) >= tail_tol) {
        hi *= 2.0;
        if (hi > 1e3)
            throw ParameterError("truncate: tail_tol too small");
    }
    double lo = 0.0;
    while (hi - lo > 1e-9 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (tail_mass(w, d, mid) < tail_tol)
            hi = mid;
        else
            lo = mid;
    }
    return truncate_at(w, d, hi);
}

Truncation truncate_at(const WeightSpec& w, const Domain& d, double R)
{
    if (!(R > 0.0))
        throw ParameterError("truncate_at: radius must be positive");
    validate(d);
    if (is_bounded(d))
        return {d, kInf};
    const double cx = w.centre_x(), cy = w.centre_y();

    Domain out = std::visit(
        [&](const auto& v) -> Domain {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Strip>) {
                const double y1 = std::max(v.y1, cy - R);
                const double y2 = std::min(v.y2, cy + R);
                if (!(y2 > y1))
                    throw DomainError("truncate: strip lies entirely in the Gaussian tail");
                return ConvexPolygon::rectangle(cx - R, cx + R, y1, y2);
            } else if constexpr (std::is_same_v<T, SemiStrip>) {
                const double x2 = std::max(cx + R, v.x + 1.0);
                return ConvexPolygon::rectangle(v.x, x2, v.y1, v.y2);
            } else if constexpr (std::is_same_v<T, ProfileDomain>) {
                ProfileDomain p = v;
                const double a = compute_a_eps(v.f, v.eps);
                p.x_max = std::max(cx + R, 2.0 * a + 1.0);
                return p;
            } else if constexpr (std::is_same_v<T, Plane>) {
                return ConvexPolygon::rectangle(cx - R, cx + R, cy - R, cy + R);
            } else {
                return v;
            }
        },
        d);
    return {std::move(out), R};
}

ConvexPolygon polygon_approximation(const ProfileDomain& p, int samples)
{
    if (!std::isfinite(p.x_max))
        throw DomainError("polygon_approximation: profile domain must be truncated");
    const double a = compute_a_eps(p.f, p.eps);
    std::vector<double> xs{0.0};
    if (a > 0.0 && a < p.x_max)
        xs.push_back(a);
    for (double k : p.f.kinks())
        if (k > 0.0 && k < std::min(a, p.x_max))
            xs.push_back(k);
    if (p.f.form() == Profile::Form::Tanh && a > 0.0)
        for (int i = 1; i < samples; ++i)
            xs.push_back(a * i / samples);
    xs.push_back(p.x_max);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Point> pts{{0.0, 0.0}, {p.x_max, 0.0}};
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
        const double y = std::min(p.eps, p.f(*it));
        if (y > 0.0)
            pts.push_back({*it, y});
    }
    // remove collinear points along the top
    std::vector<Point> clean;
    for (const auto& q : pts) {
        while (clean.size() >= 2 &&
               std::abs(orient(clean[clean.size() - 2], clean.back(), q)) <=
                   1e-14 * norm(q - clean[clean.size() - 2]) * norm(clean.back() - clean[clean.size() - 2]))
            clean.pop_back();
        clean.push_back(q);
    }
    if (clean.size() >= 3 &&
        std::abs(orient(clean[clean.size() - 2], clean.back(), clean.front())) <=
            1e-14 * norm(clean.front() - clean[clean.size() - 2]) * norm(clean.back() - clean[clean.size() - 2]))
        clean.pop_back();
    return ConvexPolygon(std::move(clean));
}

ConvexPolygon as_polygon(const Domain& d)
{
    if (const auto* p = std::get_if<ConvexPolygon>(&d))
        return *p;
    if (const auto* p = std::get_if<ProfileDomain>(&d))
        return polygon_approximation(*p);
    throw DomainError("as_polygon: domain is unbounded; truncate first");
}

// ---------------------------------------------------------------------------
// Quadrature

double gaussian_measure(const WeightSpec& w, const ConvexPolygon& poly, double tol)
{
    if (!(tol > 0.0))
        throw ParameterError("gaussian_measure: tol must be positive");
    const double rel = relative_tol(tol);
    double total = 0.0;
    for (const auto& s : slabs_of(poly)) {
        auto f = [&](double x) {
            return std::exp(-0.5 * (w.x0 + x) * (w.x0 + x)) * gauss_interval(w.y0, s.low(x), s.up(x));
        };
        total += integrate_1d(f, s.x_lo, s.x_hi, rel);
    }
    return total;
}

double gaussian_measure(const WeightSpec& w, const Domain& d, double tol)
{
    if (!(tol > 0.0))
        throw ParameterError("gaussian_measure: tol must be positive");
    validate(d);
    Domain bounded = d;
    double budget = tol;
    if (!is_bounded(d)) {
        bounded = truncate(w, d, 0.1 * tol).domain;
        budget = 0.9 * tol;
    }
    if (const auto* p = std::get_if<ProfileDomain>(&bounded)) {
        const double a = compute_a_eps(p->f, p->eps);
        std::vector<double> xs{0.0, p->x_max};
        if (a > 0.0 && a < p->x_max)
            xs.push_back(a);
        for (double k : p->f.kinks())
            if (k < p->x_max)
                xs.push_back(k);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        const double rel = relative_tol(budget);
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            auto f = [&](double x) {
                return std::exp(-0.5 * (w.x0 + x) * (w.x0 + x)) *
                       gauss_interval(w.y0, 0.0, std::min(p->eps, p->f(x)));
            };
            total += integrate_1d(f, xs[i], xs[i + 1], rel);
        }
        return total;
    }
    return gaussian_measure(w, std::get<ConvexPolygon>(bounded), budget);
}

double integrate_weighted(const WeightSpec& w, const ConvexPolygon& poly,
                          const std::function<double(double, double)>& f, double tol)
{
    if (!(tol > 0.0))
        throw ParameterError("integrate_weighted: tol must be positive");
    const double rel = relative_tol(tol);
    double total = 0.0;
    for (const auto& s : slabs_of(poly)) {
        auto outer = [&](double x) {
            auto inner = [&](double y) { return f(x, y) * w.gamma(x, y); };
            return integrate_1d(inner, s.low(x), s.up(x), rel);
        };
        total += integrate_1d(outer, s.x_lo, s.x_hi, rel);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Bisection and the zero-mean direction

namespace {

EqualAreaCut bisect_polygon(const WeightSpec& w, const ConvexPolygon& poly, double alpha, double tol)
{
    constexpr double kQuadTol = 1e-13;
    const double total = gaussian_measure(w, poly, kQuadTol);
    if (!(total > 1e-300))
        throw DomainError("bisect_equal_area: domain has zero Gaussian measure");
    const HalfPlane dir = HalfPlane::from_angle(alpha, 0.0);
    double lo = kInf, hi = -kInf;
    for (const auto& p : poly.vertices()) {
        lo = std::min(lo, dot(p, dir.normal));
        hi = std::max(hi, dot(p, dir.normal));
    }
    auto below = [&](double c) {
        auto piece = poly.clip({dir.normal, c});
        return piece ? gaussian_measure(w, *piece, kQuadTol) : 0.0;
    };
    const double target = 0.5 * total;
    double f_lo = -target, f_hi = target;
    double c = 0.5 * (lo + hi);
    double fc = below(c) - target;
    // Illinois false position with bisection safeguard; F is increasing.
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(fc) <= tol * total * 1e-3 || hi - lo <= 1e-15 * std::max(1.0, std::abs(c)))
            break;
        if (fc < 0.0) {
            lo = c;
            f_lo = fc;
            if (side == -1)
                f_hi *= 0.5;
            side = -1;
        } else {
            hi = c;
            f_hi = fc;
            if (side == 1)
                f_lo *= 0.5;
            side = 1;
        }
        double next = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        c = next;
        fc = below(c) - target;
    }
    if (std::abs(fc) > tol * total)
        throw SolverError("bisect_equal_area: failed to reach the equal-area tolerance");
    return {{dir.normal, c}, c, fc + target, total, kInf};
}

} // namespace

EqualAreaCut bisect_equal_area(const WeightSpec& w, const Domain& d, double direction_angle, double tol)
{
    if (!(tol > 0.0))
        throw ParameterError("bisect_equal_area: tol must be positive");
    const Truncation t = truncate(w, d, 1e-14);
    const ConvexPolygon poly = as_polygon(t.domain);
    EqualAreaCut cut = bisect_polygon(w, poly, direction_angle, tol);
    cut.truncation_radius = t.radius;
    return cut;
}

ZeroMeanDirection find_zero_mean_direction(const WeightSpec& w, const Domain& d,
                                           const HalfIntegral& half_integral, double l1_norm,
                                           double tol)
{
    if (!(tol > 0.0))
        throw ParameterError("find_zero_mean_direction: tol must be positive");
    ZeroMeanDirection out;
    if (!(l1_norm > 0.0) || !std::isfinite(l1_norm)) {
        out.degenerate = true;
        return out;
    }
    const Truncation t = truncate(w, d, 1e-14);
    const ConvexPolygon poly = as_polygon(t.domain);
    const double target = tol * l1_norm;

    auto eval = [&](double alpha, double* offset) {
        const EqualAreaCut cut = bisect_polygon(w, poly, alpha, 1e-12);
        ++out.evaluations;
        if (offset)
            *offset = cut.offset;
        return half_integral(cut.line);
    };

    constexpr int kSamples = 24;
    std::vector<double> alphas, values;
    for (int k = 0; k <= kSamples; ++k) {
        const double a = std::numbers::pi * k / kSamples;
        double off = 0.0;
        const double v = eval(a, &off);
        if (std::abs(v) <= target) {
            out.alpha = out.alpha_lo = out.alpha_hi = a;
            out.offset = off;
            out.integral = out.integral_lo = out.integral_hi = v;
            return out;
        }
        alphas.push_back(a);
        values.push_back(v);
    }
    std::size_t k = 0;
    while (k + 1 < values.size() && values[k] * values[k + 1] > 0.0)
        ++k;
    if (k + 1 >= values.size())
        throw SolverError("find_zero_mean_direction: I(alpha) has no sign change on [0, pi]");

    double lo = alphas[k], hi = alphas[k + 1];
    double f_lo = values[k], f_hi = values[k + 1];
    out.alpha_lo = lo;
    out.integral_lo = f_lo;
    out.alpha_hi = hi;
    out.integral_hi = f_hi;
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        double a = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        if (!(a > lo && a < hi))
            a = 0.5 * (lo + hi);
        double off = 0.0;
        const double v = eval(a, &off);
        out.alpha = a;
        out.offset = off;
        out.integral = v;
        if (std::abs(v) <= target || hi - lo < 1e-15)
            return out;
        if ((v < 0.0) == (f_lo < 0.0)) {
            lo = a;
            f_lo = v;
            if (side == -1)
                f_hi *= 0.5;
            side = -1;
            out.alpha_lo = a;
            out.integral_lo = v;
        } else {
            hi = a;
            f_hi = v;
            if (side == 1)
                f_lo *= 0.5;
            side = 1;
            out.alpha_hi = a;
            out.integral_hi = v;
        }
    }
    throw SolverError("find_zero_mean_direction: root finder did not converge");
}

ZeroMeanDirection find_zero_mean_direction(const WeightSpec& w, const Domain& d,
                                           const std::function<double(double, double)>& u,
                                           double tol)
{
    const Truncation t = truncate(w, d, 1e-14);
    const ConvexPolygon poly = as_polygon(t.domain);
    constexpr double kQuadTol = 1e-13;
    const double l1 = integrate_weighted(w, poly, [&](double x, double y) { return std::abs(u(x, y)); },
                                         kQuadTol);
    auto half = [&](const HalfPlane& h) {
        auto piece = poly.clip(h);
        return piece ? integrate_weighted(w, *piece, u, kQuadTol) : 0.0;
    };
    return find_zero_mean_direction(w, d, half, l1, tol);
}

} // namespace gauss_neumann
