#include "doctest.h"

#include <cmath>
#include <limits>

#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/profile.hpp"
#include "gauss_neumann/thinlimit.hpp"
#include "gauss_neumann/weights.hpp"

using namespace gauss_neumann;

TEST_SUITE("weights") {

TEST_CASE("gamma closed forms")
{
    const WeightSpec w0{};
    CHECK(eval_gamma(w0, 0, 0) == 1.0);
    CHECK(eval_gamma(w0, 1, 0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(eval_gamma(WeightSpec{1, 0}, 1, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(eval_gamma(WeightSpec{0.3, -0.7}, 0.2, 1.1) ==
          doctest::Approx(std::exp(-(0.25 + 0.16) / 2)).epsilon(1e-15));
    CHECK(gamma1(2.0) == doctest::Approx(std::exp(-2.0)));
    CHECK(w0.gamma0(1.5) == doctest::Approx(std::exp(-1.125)));
}

TEST_CASE("gamma symmetry with zero offsets")
{
    const WeightSpec w{};
    for (double x : {-2.5, -0.3, 0.0, 0.7, 3.1})
        for (double y : {-1.0, 0.4, 2.2}) {
            const double g = eval_gamma(w, x, y);
            CHECK(g > 0.0);
            CHECK(g <= 1.0);
            CHECK(g == doctest::Approx(eval_gamma(w, y, x)).epsilon(1e-15));
            CHECK(g == doctest::Approx(eval_gamma(w, -x, -y)).epsilon(1e-15));
        }
}

TEST_CASE("non-finite input is rejected")
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eval_gamma(WeightSpec{}, nan, 0), DomainError);
    CHECK_THROWS_AS(eval_gamma(WeightSpec{}, 0, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("gamma on the reference strip")
{
    const WeightSpec w{};
    const Profile f = Profile::linear(1.0);
    CHECK(eval_gamma_eps(w, f, 0.1, 0, 0) == doctest::Approx(std::exp(-0.005)).epsilon(1e-14));
    CHECK(eval_gamma_eps(w, f, 0.1, -1, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    // both factors evaluated independently: x = a + s = 1.1, y = eps * t = 0.1
    const double x = 0.1 + 1.0, y = 0.1;
    CHECK(eval_gamma_eps(w, f, 0.1, 1, 1) == doctest::Approx(std::exp(-x * x / 2) * std::exp(-y * y / 2)).epsilon(1e-14));
    CHECK_THROWS_AS(eval_gamma_eps(w, f, 0.1, -1.5, 0.5), DomainError);
    CHECK_THROWS_AS(eval_gamma_eps(w, f, 0.1, 0.5, 1.5), DomainError);
}

TEST_CASE("eps weights converge to one")
{
    const WeightSpec w{0.4, 0.3};
    const Profile f = Profile::tanh(2.0);
    double prev_rho = 0.0, prev_c = std::numeric_limits<double>::infinity();
    for (double eps : {0.4, 0.2, 0.1, 0.05, 0.025, 0.0125}) {
        const EpsWeights ew(w, eps, compute_a_eps(f, eps));
        const double rho = ew.rho(1.0);
        CHECK(rho <= 1.0);
        CHECK(rho > prev_rho);
        CHECK(ew.c_eps() >= 1.0);
        CHECK(ew.c_eps() < prev_c);
        prev_rho = rho;
        prev_c = ew.c_eps();
    }
    CHECK(prev_rho == doctest::Approx(1.0).epsilon(0.02));
    CHECK(prev_c == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("gamma_eps lies between gamma_minus and gamma_plus on the channel")
{
    const Profile f = Profile::linear(1.0);
    for (const WeightSpec w : {WeightSpec{0, 0}, WeightSpec{0.5, 0.25}})
        for (double eps : {0.8, 0.4, 0.1}) {
            const EpsWeights ew(w, eps, compute_a_eps(f, eps));
            for (double s = 0.0; s <= 6.0; s += 0.25)
                for (double t = 0.0; t <= 1.0; t += 0.125) {
                    const double g = eval_gamma_eps(w, f, eps, s, t);
                    CHECK(ew.gamma_minus(s) <= g * (1 + 1e-14));
                    CHECK(g <= ew.gamma_plus(s) * (1 + 1e-14));
                }
        }
}

}
