#include <doctest.h>

#include <cmath>
#include <numbers>

#include "srbp/quadrature.hpp"

using namespace srbp;

TEST_SUITE("quadrature") {

TEST_CASE("lorentzian-type integral matches arctan antiderivative") {
    // int dq / (1 + q^2/2) over [-R, R] = 2 sqrt(2) atan(R/sqrt(2))
    const double R = 50.0;
    const double got = quad::integrate([](double q) { return 1.0 / (1.0 + 0.5 * q * q); }, -R, R, 1e-12);
    const double want = 2.0 * std::numbers::sqrt2 * std::atan(R / std::numbers::sqrt2);
    CHECK(got == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("breakpoint form handles narrow peaks") {
    const double lam = 1e-8;
    auto f = [lam](double q) { return 1.0 / (lam + 0.5 * q * q); };
    std::vector<double> pts{-10.0, -1e-3, 0.0, 1e-3, 10.0};
    const double got = quad::integrate(f, pts, 1e-10);
    const double want = 2.0 * std::sqrt(2.0 / lam) * std::atan(10.0 / std::sqrt(2.0 * lam));
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("graded panels integrate the p^a singularity") {
    for (double a : {-0.5, -0.9, 0.5}) {
        const double got =
            quad::integrate_singular_left([a](double x) { return std::pow(x, a); }, 0.0, 1.0, 1e-11);
        CHECK(got == doctest::Approx(1.0 / (1.0 + a)).epsilon(1e-7));
    }
}

TEST_CASE("gaussian moment") {
    const double got =
        quad::integrate([](double x) { return x * x * std::exp(-x * x); }, -20.0, 20.0, 1e-12);
    CHECK(got == doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

} // TEST_SUITE
