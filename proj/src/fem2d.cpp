#include "gauss_neumann/fem2d.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/parallel.hpp"

namespace gauss_neumann {

namespace {

TriangleRule make_rule()
{
    TriangleRule r{};
    std::size_t k = 0;
    auto orbit3 = [&](double a, double b, double wt) {
        r.barycentric[k] = {a, a, b};
        r.weights[k++] = wt;
        r.barycentric[k] = {a, b, a};
        r.weights[k++] = wt;
        r.barycentric[k] = {b, a, a};
        r.weights[k++] = wt;
    };
    orbit3(0.063089014491502, 0.873821971016996, 0.050844906370207);
    orbit3(0.249286745170910, 0.501426509658179, 0.116786275726379);
    const double a = 0.053145049844817, b = 0.310352451033784, c = 0.636502499121399;
    const double wt = 0.082851075618374;
    for (const auto& p : {std::array<double, 3>{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}) {
        r.barycentric[k] = p;
        r.weights[k++] = wt;
    }
    return r;
}

struct Element {
    std::array<Point, 3> p;
    double area;
    std::array<Point, 3> grad; ///< gradients of the hat functions
};

Element element(const TriMesh& m, std::size_t t)
{
    const auto& v = m.triangles[t];
    Element e;
    for (int i = 0; i < 3; ++i)
        e.p[static_cast<std::size_t>(i)] = m.vertices[static_cast<std::size_t>(v[static_cast<std::size_t>(i)])];
    const double det = cross(e.p[1] - e.p[0], e.p[2] - e.p[0]);
    e.area = 0.5 * det;
    for (int i = 0; i < 3; ++i) {
        const Point a = e.p[static_cast<std::size_t>((i + 1) % 3)];
        const Point b = e.p[static_cast<std::size_t>((i + 2) % 3)];
        // rotate (b - a) by -90 degrees and scale
        e.grad[static_cast<std::size_t>(i)] = {(a.y - b.y) / det, (b.x - a.x) / det};
    }
    return e;
}

constexpr std::size_t kChunk = 2048;

} // namespace

const TriangleRule& triangle_rule()
{
    static const TriangleRule rule = make_rule();
    return rule;
}

DiscretePair assemble(const WeightSpec& w, const TriMesh& m)
{
    const auto& rule = triangle_rule();
    const std::size_t nt = m.triangles.size();
    const std::size_t chunks = (nt + kChunk - 1) / kChunk;
    using Triplets = std::vector<Eigen::Triplet<double>>;
    std::vector<Triplets> kparts(chunks), mparts(chunks);

    parallel_for(chunks, [&](std::size_t c) {
        Triplets& kt = kparts[c];
        Triplets& mt = mparts[c];
        kt.reserve(9 * kChunk);
        mt.reserve(9 * kChunk);
        for (std::size_t t = c * kChunk; t < std::min(nt, (c + 1) * kChunk); ++t) {
            const Element e = element(m, t);
            if (!(e.area > 0.0))
                throw MeshError("assemble: triangle with non-positive area");
            double mass[3][3] = {};
            double wsum = 0.0;
            for (std::size_t q = 0; q < rule.weights.size(); ++q) {
                const auto& l = rule.barycentric[q];
                const Point x = l[0] * e.p[0] + l[1] * e.p[1] + l[2] * e.p[2];
                const double g = rule.weights[q] * w.gamma(x.x, x.y);
                wsum += g;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j <= i; ++j)
                        mass[i][j] += g * l[static_cast<std::size_t>(i)] * l[static_cast<std::size_t>(j)];
            }
            const auto& v = m.triangles[t];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j <= i; ++j) {
                    const double kij = e.area * wsum * dot(e.grad[static_cast<std::size_t>(i)], e.grad[static_cast<std::size_t>(j)]);
                    const double mij = e.area * mass[i][j];
                    kt.emplace_back(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)], kij);
                    mt.emplace_back(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)], mij);
                    if (i != j) {
                        kt.emplace_back(v[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(i)], kij);
                        mt.emplace_back(v[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(i)], mij);
                    }
                }
        }
    });

    Triplets kall, mall;
    for (std::size_t c = 0; c < chunks; ++c) {
        kall.insert(kall.end(), kparts[c].begin(), kparts[c].end());
        mall.insert(mall.end(), mparts[c].begin(), mparts[c].end());
    }
    const auto n = static_cast<Eigen::Index>(m.vertices.size());
    DiscretePair out{SparseMatrix(n, n), SparseMatrix(n, n)};
    out.K.setFromTriplets(kall.begin(), kall.end());
    out.M.setFromTriplets(mall.begin(), mall.end());
    return out;
}

Spectrum2D solve_on_mesh(const WeightSpec& w, TriMesh mesh, int k, double tol)
{
    if (k < 1)
        throw ParameterError("solve_neumann_2d: k must be at least 1");
    if (static_cast<std::size_t>(k) + 1 > mesh.vertices.size() / 2)
        throw ParameterError("solve_neumann_2d: k exceeds the resolvable modes of the mesh");
    const DiscretePair km = assemble(w, mesh);
    EigenOptions eo;
    eo.count = k + 1;
    eo.tol = tol;
    EigenResult r = solve_lowest(km.K, km.M, eo);
    Spectrum2D s;
    s.eigenvalues = std::move(r.values);
    s.eigenvectors = std::move(r.vectors);
    s.residuals = std::move(r.residuals);
    s.multiplicities = group_multiplicities(s.eigenvalues);
    s.mesh = std::move(mesh);
    s.tol = tol;
    return s;
}

Spectrum2D solve_neumann_2d(const WeightSpec& w, const Domain& d, int k, const Fem2dOptions& opts)
{
    if (!(opts.tol > 0.0))
        throw ParameterError("solve_neumann_2d: tol must be positive");
    MeshOptions mo;
    mo.h = opts.h;
    mo.tail_tol = opts.tail_tol;
    mo.R = opts.R;
    mo.grading = opts.grading;
    mo.refine = opts.refine;
    return solve_on_mesh(w, mesh_domain(w, d, mo), k, opts.tol);
}

Extrapolated2D solve_neumann_2d_extrapolated(const WeightSpec& w, const Domain& d, int k,
                                             const Fem2dOptions& opts)
{
    Extrapolated2D out;
    const Spectrum2D coarse = solve_neumann_2d(w, d, k, opts);
    Fem2dOptions fine_opts = opts;
    fine_opts.refine = opts.refine + 1;
    out.fine_spectrum = solve_neumann_2d(w, d, k, fine_opts);
    out.coarse = coarse.eigenvalues;
    out.fine = out.fine_spectrum.eigenvalues;
    out.values.resize(out.fine.size());
    out.error_estimate.resize(out.fine.size());
    for (std::size_t i = 0; i < out.fine.size(); ++i) {
        out.values[i] = (4.0 * out.fine[i] - out.coarse[i]) / 3.0;
        out.error_estimate[i] = std::abs(out.fine[i] - out.values[i]);
    }
    return out;
}

double rayleigh_quotient(const DiscretePair& km, const Eigen::VectorXd& u)
{
    const double den = u.dot(km.M * u);
    if (!(den > 0.0))
        throw DomainError("rayleigh_quotient: zero field");
    return u.dot(km.K * u) / den;
}

double rayleigh_quotient(const WeightSpec& w, const TriMesh& m, const Eigen::VectorXd& u)
{
    if (u.size() != static_cast<Eigen::Index>(m.vertices.size()))
        throw ParameterError("rayleigh_quotient: field size does not match the mesh");
    return rayleigh_quotient(assemble(w, m), u);
}

double weighted_mean(const WeightSpec& w, const TriMesh& m, const Eigen::VectorXd& u)
{
    if (u.size() != static_cast<Eigen::Index>(m.vertices.size()))
        throw ParameterError("weighted_mean: field size does not match the mesh");
    const DiscretePair km = assemble(w, m);
    return Eigen::VectorXd::Ones(u.size()).dot(km.M * u);
}

Eigen::VectorXd interpolate(const TriMesh& m, const std::function<double(double, double)>& f)
{
    Eigen::VectorXd u(static_cast<Eigen::Index>(m.vertices.size()));
    for (std::size_t i = 0; i < m.vertices.size(); ++i)
        u[static_cast<Eigen::Index>(i)] = f(m.vertices[i].x, m.vertices[i].y);
    return u;
}

namespace {

struct Vertex {
    Point p;
    double u;
};

void accumulate(const WeightSpec& w, const Vertex& a, const Vertex& b, const Vertex& c, double grad2,
                HalfIntegrals& out)
{
    const double area = 0.5 * std::abs(cross(b.p - a.p, c.p - a.p));
    if (area == 0.0)
        return;
    const auto& rule = triangle_rule();
    HalfIntegrals local;
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
        const auto& l = rule.barycentric[q];
        const Point x = l[0] * a.p + l[1] * b.p + l[2] * c.p;
        const double u = l[0] * a.u + l[1] * b.u + l[2] * c.u;
        const double g = rule.weights[q] * w.gamma(x.x, x.y);
        local.u += g * u;
        local.abs_u += g * std::abs(u);
        local.u2 += g * u * u;
        local.measure += g;
    }
    out.u += area * local.u;
    out.abs_u += area * local.abs_u;
    out.u2 += area * local.u2;
    out.grad2 += area * local.measure * grad2;
    out.measure += area * local.measure;
}

HalfIntegrals integrate_impl(const WeightSpec& w, const TriMesh& m, const Eigen::VectorXd& u,
                             const HalfPlane* half)
{
    if (u.size() != static_cast<Eigen::Index>(m.vertices.size()))
        throw ParameterError("integrate_half: field size does not match the mesh");
    const std::size_t nt = m.triangles.size();
    const std::size_t chunks = (nt + kChunk - 1) / kChunk;
    std::vector<HalfIntegrals> parts(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        HalfIntegrals acc;
        for (std::size_t t = c * kChunk; t < std::min(nt, (c + 1) * kChunk); ++t) {
            const Element e = element(m, t);
            const auto& idx = m.triangles[t];
            std::array<Vertex, 3> v;
            Point grad{0.0, 0.0};
            for (std::size_t i = 0; i < 3; ++i) {
                v[i] = {e.p[i], u[idx[i]]};
                grad = grad + v[i].u * e.grad[i];
            }
            const double g2 = dot(grad, grad);
            if (!half) {
                accumulate(w, v[0], v[1], v[2], g2, acc);
                continue;
            }
            std::array<double, 3> d;
            int inside = 0;
            for (std::size_t i = 0; i < 3; ++i) {
                d[i] = half->signed_distance(v[i].p);
                inside += d[i] < 0.0;
            }
            if (inside == 3) {
                accumulate(w, v[0], v[1], v[2], g2, acc);
                continue;
            }
            if (inside == 0)
                continue;
            std::vector<Vertex> poly;
            for (std::size_t i = 0; i < 3; ++i) {
                const std::size_t j = (i + 1) % 3;
                if (d[i] < 0.0)
                    poly.push_back(v[i]);
                if ((d[i] < 0.0) != (d[j] < 0.0)) {
                    const double s = d[i] / (d[i] - d[j]);
                    poly.push_back({v[i].p + s * (v[j].p - v[i].p), v[i].u + s * (v[j].u - v[i].u)});
                }
            }
            for (std::size_t k = 1; k + 1 < poly.size(); ++k)
                accumulate(w, poly[0], poly[k], poly[k + 1], g2, acc);
        }
        parts[c] = acc;
    });
    HalfIntegrals total;
    for (const auto& p : parts) {
        total.u += p.u;
        total.abs_u += p.abs_u;
        total.u2 += p.u2;
        total.grad2 += p.grad2;
        total.measure += p.measure;
    }
    return total;
}

} // namespace

HalfIntegrals integrate_half(const WeightSpec& w, const TriMesh& m, const Eigen::VectorXd& u,
                             const HalfPlane& half)
{
    return integrate_impl(w, m, u, &half);
}

HalfIntegrals integrate_all(const WeightSpec& w, const TriMesh& m, const Eigen::VectorXd& u)
{
    return integrate_impl(w, m, u, nullptr);
}

void write_vtk(std::ostream& os, const TriMesh& m,
               const std::vector<std::pair<std::string, Eigen::VectorXd>>& fields)
{
    os << "# vtk DataFile Version 3.0\n" << (m.source.empty() ? "mesh" : m.source) << "\nASCII\n";
    os << "DATASET UNSTRUCTURED_GRID\nPOINTS " << m.vertices.size() << " double\n";
    os.precision(15);
    for (const auto& p : m.vertices)
        os << p.x << ' ' << p.y << " 0\n";
    os << "CELLS " << m.triangles.size() << ' ' << 4 * m.triangles.size() << '\n';
    for (const auto& t : m.triangles)
        os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    os << "CELL_TYPES " << m.triangles.size() << '\n';
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        os << "5\n";
    if (fields.empty())
        return;
    os << "POINT_DATA " << m.vertices.size() << '\n';
    for (const auto& [name, values] : fields) {
        if (values.size() != static_cast<Eigen::Index>(m.vertices.size()))
            throw ParameterError("write_vtk: field size does not match the mesh");
        os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (Eigen::Index i = 0; i < values.size(); ++i)
            os << values[i] << '\n';
    }
}

} // namespace gauss_neumann
