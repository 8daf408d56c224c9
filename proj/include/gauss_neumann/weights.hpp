#pragma once

namespace gauss_neumann {

class Profile;

/// Gaussian weight exp(-((x0+x)^2 + (y0+y)^2)/2) with a fixed offset.
struct WeightSpec {
    double x0 = 0.0;
    double y0 = 0.0;

    /// Full planar weight. Throws DomainError on non-finite input.
    double gamma(double x, double y) const;

    /// Weight restricted to the x-axis, gamma(s, 0).
    double gamma0(double s) const;

    /// Centre of the Gaussian in physical coordinates.
    double centre_x() const { return -x0; }
    double centre_y() const { return -y0; }
};

/// Unshifted one-dimensional Gaussian exp(-x^2/2).
double gamma1(double x);

double eval_gamma(const WeightSpec& w, double x, double y);

/// gamma composed with the thin-domain map (s,t) -> (g(s), f_eps(g(s)) t).
/// (s,t) must lie in (-1,+inf) x (0,1), closure allowed.
double eval_gamma_eps(const WeightSpec& w, const Profile& profile, double eps, double s, double t);

/// Auxiliary eps-dependent weight factors that bound gamma_eps on the
/// channel part s > 0 of the reference strip.
class EpsWeights {
public:
    EpsWeights(const WeightSpec& w, double eps, double a_eps);

    double eps() const { return eps_; }
    double a_eps() const { return a_eps_; }

    /// exp(-(a^2 + 2|x0|a + eps^2 + 2|y0|eps)/2) exp(-a s)
    double rho(double s) const;

    /// exp((2|x0|a + eps^2 + 2|y0|eps)/2)
    double c_eps() const;

    /// exp(-((|x0|+s+1)^2 + (|y0|+1)^2)/2)
    double gamma_minus(double s) const;

    /// exp(-((s-|x0|)^2 - 2|y0|)/2)
    double gamma_plus(double s) const;

    const WeightSpec& weight() const { return w_; }

private:
    WeightSpec w_;
    double eps_;
    double a_eps_;
};

} // namespace gauss_neumann
