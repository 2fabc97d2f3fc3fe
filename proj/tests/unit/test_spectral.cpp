#include <doctest.h>

#include <cmath>
#include <numbers>

#include "srbp/spectral.hpp"

using namespace srbp;
using namespace srbp::spectral;

namespace {
const double kPiSqrt2 = std::numbers::pi * std::numbers::sqrt2;
}

TEST_SUITE("spectral") {

TEST_CASE("J^1(1) for the flat density equals pi sqrt(2)") {
    const SpectralDensity d = SpectralDensity::dirac();
    const Bracketed j = j_integral(d, 1.0, 1.0, 1.0);
    CHECK(j.value == doctest::Approx(kPiSqrt2).epsilon(1e-6));
    CHECK(j.width() <= 2e-6 * j.value);
    SUBCASE("beta = 0 gives 0") { CHECK(j_integral(d, 0.0, 1.0, 1.0).value == 0.0); }
    SUBCASE("translation invariance: inner integral independent of p") {
        const Bracketed a = inner_integral(d, 1.0, 1.0, 1.0, 0.0);
        const Bracketed b = inner_integral(d, 1.0, 1.0, 1.0, 3.7);
        CHECK(a.value == doctest::Approx(b.value).epsilon(1e-7));
    }
    SUBCASE("s <= 1/2 rejected") { CHECK_THROWS(j_integral(d, 1.0, 0.5, 1.0)); }
}

TEST_CASE("J^s decays as lambda grows") {
    for (const SpectralDensity& d :
         {SpectralDensity::dirac(), SpectralDensity::power(0.5), SpectralDensity::bump()}) {
        const double j1 = j_integral(d, 1.0, 1.0, 1.0).value;
        const double jbig = j_integral(d, 1.0, 1.0, 1e6).value;
        CHECK(jbig <= 1e-2 * j1);
    }
}

TEST_CASE("free resolvent closed form and slopes") {
    const SpectralDensity d = SpectralDensity::dirac();
    CHECK(free_resolvent(d, 1.0).value == doctest::Approx(kPiSqrt2).epsilon(1e-6));

    SUBCASE("flat density slope -1/2") {
        std::vector<double> lams, vals;
        for (double l = 1e-8; l <= 1.01e-2; l *= 10.0) {
            lams.push_back(l);
            vals.push_back(free_resolvent(d, l).value);
        }
        const SlopeFit f = fit_loglog_slope(lams, vals);
        CHECK(f.slope == doctest::Approx(-0.5).epsilon(0.04));
        CHECK(std::fabs(f.slope + 0.5) <= 0.02);
    }
    SUBCASE("power density slope -(1-alpha)/2 = -0.25") {
        const SpectralDensity p = SpectralDensity::power(0.5);
        std::vector<double> lams, vals;
        for (double l = 1e-8; l <= 1.01e-2; l *= 10.0) {
            lams.push_back(l);
            vals.push_back(free_resolvent(p, l).value);
        }
        CHECK(std::fabs(fit_loglog_slope(lams, vals).slope + 0.25) <= 0.03);
    }
}

TEST_CASE("variational lower bound") {
    const SpectralDensity d = SpectralDensity::dirac();
    SUBCASE("beta = 0 reduces to a quarter of the free resolvent") {
        const Bracketed lb = variational_lower_bound(d, 0.0, 0.37);
        const Bracketed fr = free_resolvent(d, 0.37);
        CHECK(lb.value == doctest::Approx(0.25 * fr.value).epsilon(1e-9));
    }
    SUBCASE("monotone non-increasing in lambda and below the free resolvent") {
        double prev = 1e300;
        for (double lam : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
            const double v = variational_lower_bound(d, 1.0, lam, 257, 1e-6).value;
            CHECK(v <= prev * (1.0 + 1e-9));
            CHECK(v <= free_resolvent(d, lam).value);
            prev = v;
        }
    }
    SUBCASE("flat-density slope magnitude >= 0.2") {
        std::vector<double> lams, vals;
        for (double l = 1e-8; l <= 1.01e-3; l *= 10.0) {
            lams.push_back(l);
            vals.push_back(variational_lower_bound(d, 1.0, l, 257, 1e-6).value);
        }
        const double s = fit_loglog_slope(lams, vals).slope;
        CHECK(-s >= 0.25 - 0.05);
    }
}

TEST_CASE("quadrature settings converge: tolerance/grid halving below 1e-6") {
    const SpectralDensity d = SpectralDensity::dirac();
    const double j_a = j_integral(d, 1.0, 1.0, 0.01, 1e-8).value;
    const double j_b = j_integral(d, 1.0, 1.0, 0.01, 5e-9).value;
    CHECK(std::fabs(j_a - j_b) <= 1e-6 * std::fabs(j_b));
    const double lb_a = variational_lower_bound(d, 1.0, 1e-3, 513, 1e-7).value;
    const double lb_b = variational_lower_bound(d, 1.0, 1e-3, 1025, 1e-7).value;
    CHECK(std::fabs(lb_a - lb_b) <= 1e-6 * std::fabs(lb_b));
}

TEST_CASE("exponent windows") {
    SUBCASE("alpha = 0") {
        const ExponentWindow w = laplace_exponent_bounds(0.0);
        CHECK(w.dhat_lower == doctest::Approx(2.25));
        CHECK(w.dhat_upper == doctest::Approx(2.5));
        CHECK(w.msd_lower == doctest::Approx(1.25));
        CHECK(w.msd_upper == doctest::Approx(1.5));
    }
    SUBCASE("diffusive edge alpha -> 1") {
        const ExponentWindow w = laplace_exponent_bounds(1.0 - 1e-9);
        CHECK(w.msd_lower == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(w.msd_upper == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("ballistic edge alpha -> -1") {
        const ExponentWindow w = laplace_exponent_bounds(-1.0 + 1e-9);
        CHECK(w.msd_upper == doctest::Approx(2.0).epsilon(1e-6));
    }
    SUBCASE("alpha out of range") {
        CHECK_THROWS(laplace_exponent_bounds(1.5));
        CHECK_THROWS(laplace_exponent_bounds(-1.0));
    }
}

TEST_CASE("log-log slope fitting") {
    std::vector<double> xs, ys;
    for (double x = 0.1; x < 100.0; x *= 1.7) {
        xs.push_back(x);
        ys.push_back(std::pow(x, -0.5));
    }
    const SlopeFit f = fit_loglog_slope(xs, ys);
    CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(f.stderr_ <= 1e-12);

    std::vector<double> y2;
    for (double x : xs) y2.push_back(3.7 * std::pow(x, 4.0 / 3.0));
    CHECK(fit_loglog_slope(xs, y2).slope == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS(fit_loglog_slope({1.0, 2.0}, {1.0, 2.0}));
    CHECK_THROWS(fit_loglog_slope({1, 2, 3, 4, -5}, {1, 2, 3, 4, 5}));
}

TEST_CASE("bound table invariants") {
    const SpectralDensity d = SpectralDensity::dirac();
    const BoundTable t = make_bound_table(d, 1.0, {1.0, 0.1, 0.01});
    for (std::size_t i = 0; i + 1 < t.lambdas.size(); ++i) {
        CHECK(t.j1[i] <= t.j1[i + 1]);  // J^1 non-increasing in lambda
        CHECK(t.lower_bound[i] <= t.resolvent[i]);
        CHECK(t.lower_bracket[i] <= t.lower_bound[i]);
        CHECK(t.upper_bracket[i] >= t.lower_bound[i]);
    }
    CHECK_THROWS(make_bound_table(d, 1.0, {0.1, 1.0}));
}

} // TEST_SUITE
