#include "gauss_neumann/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gauss_neumann/errors.hpp"

namespace gauss_neumann {

Profile::Profile(Form form, double param, std::vector<std::array<double, 2>> knots)
    : form_(form), param_(param), knots_(std::move(knots))
{
    validate();
}

Profile Profile::linear(double slope) { return Profile(Form::Linear, slope, {}); }

Profile Profile::tanh(double scale) { return Profile(Form::Tanh, scale, {}); }

Profile Profile::piecewise_linear(std::vector<std::array<double, 2>> knots)
{
    return Profile(Form::PiecewiseLinear, 0.0, std::move(knots));
}

void Profile::validate() const
{
    switch (form_) {
    case Form::Linear:
        if (!(param_ > 0.0) || !std::isfinite(param_))
            throw DomainError("linear profile: slope must be positive and finite");
        return;
    case Form::Tanh:
        if (!(param_ > 0.0) || !std::isfinite(param_))
            throw DomainError("tanh profile: scale must be positive and finite");
        return;
    case Form::PiecewiseLinear:
        break;
    }
    if (knots_.size() < 2)
        throw DomainError("pwl profile: need at least two knots");
    if (knots_.front()[0] != 0.0)
        throw DomainError("pwl profile: first knot must sit at x = 0");
    if (knots_.front()[1] < 0.0)
        throw DomainError("pwl profile: f(0) must be non-negative");
    double prev_slope = kSlopeUnset;
    bool nontrivial = false;
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        const double dx = knots_[i][0] - knots_[i - 1][0];
        if (!(dx > 0.0))
            throw DomainError("pwl profile: knot abscissae must increase strictly");
        const double slope = (knots_[i][1] - knots_[i - 1][1]) / dx;
        if (slope < -1e-12)
            throw DomainError("pwl profile: f must be non-decreasing");
        if (prev_slope != kSlopeUnset && slope > prev_slope + 1e-12 * std::max(1.0, prev_slope))
            throw DomainError("pwl profile: f must be concave");
        if (slope > 0.0 || knots_[i][1] > 0.0)
            nontrivial = true;
        prev_slope = slope;
    }
    if (!nontrivial && knots_.front()[1] == 0.0)
        throw DomainError("pwl profile: f must be non-trivial");
}

double Profile::operator()(double x) const
{
    if (x < 0.0)
        throw DomainError("profile evaluated at negative abscissa");
    switch (form_) {
    case Form::Linear:
        return param_ * x;
    case Form::Tanh:
        return std::tanh(param_ * x);
    case Form::PiecewiseLinear:
        break;
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const std::array<double, 2>& k) { return v < k[0]; });
    std::size_t i = static_cast<std::size_t>(std::distance(knots_.begin(), it));
    if (i >= knots_.size())
        i = knots_.size() - 1;
    if (i == 0)
        i = 1;
    const auto& a = knots_[i - 1];
    const auto& b = knots_[i];
    return a[1] + (b[1] - a[1]) * (x - a[0]) / (b[0] - a[0]);
}

double Profile::derivative(double x) const
{
    if (x < 0.0)
        throw DomainError("profile derivative at negative abscissa");
    switch (form_) {
    case Form::Linear:
        return param_;
    case Form::Tanh: {
        const double th = std::tanh(param_ * x);
        return param_ * (1.0 - th * th);
    }
    case Form::PiecewiseLinear:
        break;
    }
    // right derivative: segment [k_{i-1}, k_i) containing x
    std::size_t i = 1;
    while (i + 1 < knots_.size() && x >= knots_[i][0])
        ++i;
    const auto& a = knots_[i - 1];
    const auto& b = knots_[i];
    return (b[1] - a[1]) / (b[0] - a[0]);
}

double Profile::sup() const
{
    switch (form_) {
    case Form::Linear:
        return std::numeric_limits<double>::infinity();
    case Form::Tanh:
        return 1.0;
    case Form::PiecewiseLinear:
        break;
    }
    const auto& a = knots_[knots_.size() - 2];
    const auto& b = knots_.back();
    if (b[1] > a[1])
        return std::numeric_limits<double>::infinity();
    return b[1];
}

std::vector<double> Profile::kinks() const
{
    std::vector<double> out;
    if (form_ != Form::PiecewiseLinear)
        return out;
    for (std::size_t i = 1; i + 1 < knots_.size(); ++i)
        out.push_back(knots_[i][0]);
    return out;
}

std::string Profile::description() const
{
    std::ostringstream os;
    os.precision(15);
    switch (form_) {
    case Form::Linear:
        os << "linear(slope=" << param_ << ")";
        break;
    case Form::Tanh:
        os << "tanh(scale=" << param_ << ")";
        break;
    case Form::PiecewiseLinear:
        os << "pwl(" << knots_.size() << " knots)";
        break;
    }
    return os.str();
}

} // namespace gauss_neumann
