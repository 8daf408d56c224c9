#include "gauss_neumann/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "gauss_neumann/errors.hpp"

namespace gauss_neumann {

namespace {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Uniform in [-1, 1) from raw 64-bit draws; identical across standard libraries.
Vector random_vector(std::mt19937_64& rng, Eigen::Index n)
{
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    return v;
}

class LockedSet {
public:
    LockedSet(const SparseMatrix& M, Eigen::Index n) : M_(M), X_(n, 0), MX_(n, 0) {}

    Eigen::Index size() const { return X_.cols(); }

    void add(const Vector& x, double value, double residual)
    {
        X_.conservativeResize(Eigen::NoChange, X_.cols() + 1);
        MX_.conservativeResize(Eigen::NoChange, MX_.cols() + 1);
        X_.col(X_.cols() - 1) = x;
        MX_.col(MX_.cols() - 1) = M_ * x;
        values_.push_back(value);
        residuals_.push_back(residual);
    }

    void project_out(Vector& v) const
    {
        if (X_.cols() == 0)
            return;
        for (int pass = 0; pass < 2; ++pass)
            v -= X_ * (MX_.transpose() * v);
    }

    const Matrix& X() const { return X_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& residuals() const { return residuals_; }

    /// Largest value among the `count` smallest locked values.
    double wanted_max(int count) const
    {
        std::vector<double> v = values_;
        std::sort(v.begin(), v.end());
        return v[static_cast<std::size_t>(std::min<std::size_t>(v.size(), count) - 1)];
    }

private:
    const SparseMatrix& M_;
    Matrix X_;
    Matrix MX_;
    std::vector<double> values_;
    std::vector<double> residuals_;
};

struct RitzPair {
    double value;
    Vector vector;
    double residual;
    double tol;
};

} // namespace

EigenResult solve_lowest(const SparseMatrix& K, const SparseMatrix& M, const EigenOptions& opts)
{
    const Eigen::Index n = K.rows();
    if (K.cols() != n || M.rows() != n || M.cols() != n)
        throw ParameterError("solve_lowest: K and M must be square and of equal size");
    if (opts.count < 1)
        throw ParameterError("solve_lowest: count must be >= 1");
    if (opts.count > n)
        throw ParameterError("solve_lowest: requested more eigenpairs than discrete modes");
    if (!(opts.tol > 0.0))
        throw ParameterError("solve_lowest: tol must be positive");

    const SparseMatrix A = K - opts.shift * M;
    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
    ldlt.compute(A);
    if (ldlt.info() != Eigen::Success)
        throw SolverError("solve_lowest: factorization of K - shift*M failed");

    EigenResult result;
    std::mt19937_64 rng(opts.seed);
    LockedSet locked(M, n);

    auto residual_of = [&](const Vector& x, double mu) {
        const Vector Mx = M * x;
        return (K * x - mu * Mx).norm() / Mx.norm();
    };
    auto rayleigh = [&](const Vector& x) { return x.dot(K * x) / x.dot(M * x); };
    // Below this the residual is rounding noise of the products themselves.
    const SparseMatrix Kabs = K.cwiseAbs(), Mabs = M.cwiseAbs();
    auto accept_tol = [&](const Vector& x, double mu) {
        const Vector ax = x.cwiseAbs();
        const double noise = (Kabs * ax).norm() + std::abs(mu) * (Mabs * ax).norm();
        return std::max(opts.tol, 16 * std::numeric_limits<double>::epsilon() * noise / (M * x).norm());
    };

    if (opts.constant_kernel) {
        Vector one = Vector::Ones(n);
        one /= std::sqrt(one.dot(M * one));
        const double mu = rayleigh(one);
        locked.add(one, mu, residual_of(one, mu));
    }

    const int count = opts.count;
    Eigen::Index m = opts.krylov_dim > 0 ? opts.krylov_dim : std::max<Eigen::Index>(2 * count + 20, 40);

    Vector start = random_vector(rng, n);
    bool verifying = false;
    double best_unconverged = 0.0;

    for (int restart = 0; restart <= opts.max_restarts; ++restart) {
        result.restarts = restart;
        const Eigen::Index free_dim = n - locked.size();
        if (free_dim <= 0)
            break;
        const Eigen::Index steps = std::min(m, free_dim);

        Vector q = start;
        locked.project_out(q);
        double qn = std::sqrt(q.dot(M * q));
        if (!(qn > 0.0)) {
            q = random_vector(rng, n);
            locked.project_out(q);
            qn = std::sqrt(q.dot(M * q));
        }
        q /= qn;

        Matrix V(n, steps), MV(n, steps);
        std::vector<double> alpha, beta;
        Eigen::Index built = 0;
        for (Eigen::Index j = 0; j < steps; ++j) {
            V.col(j) = q;
            MV.col(j) = M * q;
            Vector w = ldlt.solve(MV.col(j));
            ++result.solves;
            const double a = MV.col(j).dot(w);
            w -= a * V.col(j);
            if (j > 0)
                w -= beta.back() * V.col(j - 1);
            for (int pass = 0; pass < 2; ++pass) {
                locked.project_out(w);
                w -= V.leftCols(j + 1) * (MV.leftCols(j + 1).transpose() * w);
            }
            alpha.push_back(a);
            built = j + 1;
            const double b = std::sqrt(std::max(0.0, w.dot(M * w)));
            beta.push_back(b);
            if (b <= 1e-14 * std::abs(a))
                break;
            q = w / b;
        }

        Matrix T = Matrix::Zero(built, built);
        for (Eigen::Index j = 0; j < built; ++j) {
            T(j, j) = alpha[static_cast<std::size_t>(j)];
            if (j + 1 < built) {
                T(j, j + 1) = beta[static_cast<std::size_t>(j)];
                T(j + 1, j) = beta[static_cast<std::size_t>(j)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> tri(T);
        const Vector theta = tri.eigenvalues();
        const Matrix S = tri.eigenvectors();

        // Ritz pairs in order of decreasing theta (increasing mu).
        const int need = verifying ? 1 : static_cast<int>(std::max<Eigen::Index>(1, count - locked.size()));
        const int take = static_cast<int>(std::min<Eigen::Index>(built, need + 2));
        std::vector<RitzPair> ritz;
        for (int i = 0; i < take; ++i) {
            const Eigen::Index col = built - 1 - i;
            if (!(theta[col] > 0.0))
                break;
            Vector x = V.leftCols(built) * S.col(col);
            locked.project_out(x);
            x /= std::sqrt(x.dot(M * x));
            const double mu = rayleigh(x);
            ritz.push_back({mu, std::move(x), 0.0, 0.0});
            ritz.back().residual = residual_of(ritz.back().vector, mu);
            ritz.back().tol = accept_tol(ritz.back().vector, mu);
        }

        if (verifying) {
            const double top = locked.wanted_max(count);
            if (ritz.empty() || ritz.front().residual > ritz.front().tol) {
                // not yet resolved; keep iterating from this direction
                start = ritz.empty() ? random_vector(rng, n) : Vector(ritz.front().vector);
                continue;
            }
            const double gap = 1e-9 * std::max(1.0, std::abs(top));
            if (ritz.front().value < top - gap) {
                locked.add(ritz.front().vector, ritz.front().value, ritz.front().residual);
                start = random_vector(rng, n);
                continue;
            }
            break;
        }

        Vector next = Vector::Zero(n);
        for (auto& r : ritz) {
            if (r.residual <= r.tol && locked.size() < count) {
                Vector x = r.vector;
                locked.project_out(x);
                x /= std::sqrt(x.dot(M * x));
                locked.add(x, rayleigh(x), residual_of(x, rayleigh(x)));
                continue;
            }
            if (r.residual > r.tol)
                best_unconverged = r.residual;
            break;
        }
        if (locked.size() >= count) {
            verifying = true;
            start = random_vector(rng, n);
            continue;
        }
        for (auto& r : ritz)
            if (r.residual > r.tol)
                next += r.vector;
        start = next.norm() > 0.0 ? next + 1e-3 * random_vector(rng, n) : random_vector(rng, n);
    }

    if (locked.size() < count || !verifying) {
        std::ostringstream os;
        os << "solve_lowest: eigensolver did not converge (locked " << locked.size() << " of " << count
           << " after " << result.restarts << " restarts, " << result.solves
           << " solves, best pending residual " << best_unconverged << ", n = " << n << ")";
        throw SolverError(os.str());
    }

    std::vector<std::size_t> order(static_cast<std::size_t>(locked.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return locked.values()[a] < locked.values()[b]; });
    result.vectors.resize(n, count);
    for (int i = 0; i < count; ++i) {
        const std::size_t k = order[static_cast<std::size_t>(i)];
        result.values.push_back(locked.values()[k]);
        result.residuals.push_back(locked.residuals()[k]);
        result.vectors.col(i) = locked.X().col(static_cast<Eigen::Index>(k));
    }
    return result;
}

std::vector<std::pair<double, int>> group_multiplicities(const std::vector<double>& values, double rel_tol)
{
    std::vector<std::pair<double, int>> out;
    for (double v : values) {
        if (!out.empty()) {
            auto& [ref, mult] = out.back();
            if (std::abs(v - ref) <= rel_tol * std::max({1.0, std::abs(v), std::abs(ref)})) {
                ++mult;
                continue;
            }
        }
        out.emplace_back(v, 1);
    }
    return out;
}

} // namespace gauss_neumann
