#include "gauss_neumann/weights.hpp"

#include <cmath>

#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/thinlimit.hpp"

namespace gauss_neumann {

double WeightSpec::gamma(double x, double y) const
{
    if (!std::isfinite(x) || !std::isfinite(y))
        throw DomainError("gamma: non-finite argument");
    const double u = x0 + x;
    const double v = y0 + y;
    return std::exp(-0.5 * (u * u + v * v));
}

double WeightSpec::gamma0(double s) const { return gamma(s, 0.0); }

double gamma1(double x)
{
    if (!std::isfinite(x))
        throw DomainError("gamma1: non-finite argument");
    return std::exp(-0.5 * x * x);
}

double eval_gamma(const WeightSpec& w, double x, double y) { return w.gamma(x, y); }

double eval_gamma_eps(const WeightSpec& w, const Profile& profile, double eps, double s, double t)
{
    const ThinMap map(profile, eps);
    const Point p = map.to_physical(s, t);
    return w.gamma(p.x, p.y);
}

EpsWeights::EpsWeights(const WeightSpec& w, double eps, double a_eps)
    : w_(w), eps_(eps), a_eps_(a_eps)
{
    if (!(eps > 0.0))
        throw ParameterError("EpsWeights: eps must be positive");
    if (!(a_eps >= 0.0))
        throw ParameterError("EpsWeights: a_eps must be non-negative");
}

double EpsWeights::rho(double s) const
{
    const double ax = std::abs(w_.x0);
    const double ay = std::abs(w_.y0);
    const double a = a_eps_;
    const double e = eps_;
    return std::exp(-0.5 * (a * a + 2.0 * ax * a + e * e + 2.0 * ay * e)) * std::exp(-a * s);
}

double EpsWeights::c_eps() const
{
    const double ax = std::abs(w_.x0);
    const double ay = std::abs(w_.y0);
    return std::exp(0.5 * (2.0 * ax * a_eps_ + eps_ * eps_ + 2.0 * ay * eps_));
}

double EpsWeights::gamma_minus(double s) const
{
    const double u = std::abs(w_.x0) + s + 1.0;
    const double v = std::abs(w_.y0) + 1.0;
    return std::exp(-0.5 * (u * u + v * v));
}

double EpsWeights::gamma_plus(double s) const
{
    const double u = s - std::abs(w_.x0);
    return std::exp(-0.5 * (u * u - 2.0 * std::abs(w_.y0)));
}

} // namespace gauss_neumann
