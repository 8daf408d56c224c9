#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace gauss_neumann {

/// Concave, non-decreasing, continuous profile f on [0, +inf) bounding the
/// thin domains {0 < x, 0 < y < min(eps, f(x))}.
class Profile {
public:
    enum class Form { Linear, Tanh, PiecewiseLinear };

    /// f(x) = slope * x
    static Profile linear(double slope);
    /// f(x) = tanh(scale * x)
    static Profile tanh(double scale);
    /// Linear interpolation through knots (x_i, f_i), starting at x = 0 and
    /// continued past the last knot with the last slope.
    static Profile piecewise_linear(std::vector<std::array<double, 2>> knots);

    double operator()(double x) const;
    /// Right derivative; at interior points of smooth pieces this is f'.
    double derivative(double x) const;
    double fprime0() const { return derivative(0.0); }
    /// sup f over [0, +inf); +inf for unbounded profiles.
    double sup() const;

    /// Abscissae where f' jumps (pwl knots strictly inside (0, inf)).
    std::vector<double> kinks() const;

    Form form() const { return form_; }
    double parameter() const { return param_; }
    const std::vector<std::array<double, 2>>& knots() const { return knots_; }
    std::string description() const;

private:
    Profile(Form form, double param, std::vector<std::array<double, 2>> knots);
    void validate() const;

    static constexpr double kSlopeUnset = -1.0;

    Form form_;
    double param_ = 0.0;
    std::vector<std::array<double, 2>> knots_;
};

} // namespace gauss_neumann
