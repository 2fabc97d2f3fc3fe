#include <doctest.h>

#include <cmath>

#include "srbp/interaction.hpp"
#include "srbp/quadrature.hpp"

using namespace srbp;

TEST_SUITE("interaction") {

TEST_CASE("mollified density pointwise values") {
    const SpectralDensity d = SpectralDensity::dirac();
    SUBCASE("eps -> 0 pointwise limit") {
        for (double eps : {0.5, 0.1, 0.01, 1e-4}) {
            const SpectralDensity v = mollified_density(d, Mollifier::gaussian(eps));
            CHECK(v(2.0) == doctest::Approx(1.0).epsilon(4.0 * eps * eps + 1e-12));
        }
    }
    SUBCASE("direct substitution at eps = 1") {
        const SpectralDensity v = mollified_density(d, Mollifier::gaussian(1.0));
        CHECK(v(2.0) == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
    }
    SUBCASE("infrared exponents unchanged") {
        const SpectralDensity p = SpectralDensity::power(0.5);
        const SpectralDensity v = mollified_density(p, Mollifier::gaussian(0.3));
        CHECK(v.alpha() == 0.5);
        CHECK(v.alpha_star() == 0.5);
    }
    SUBCASE("nonpositive eps rejected") {
        CHECK_THROWS(Mollifier::gaussian(-1.0));
        CHECK_THROWS(Mollifier::gaussian(0.0));
    }
}

TEST_CASE("infrared slope of the mollified power density") {
    // log-log finite difference at small p recovers alpha = 1/2
    const SpectralDensity p = SpectralDensity::power(0.5);
    for (const Mollifier& m : {Mollifier::gaussian(0.2), Mollifier::compact_fourier(0.2)}) {
        const SpectralDensity v = mollified_density(p, m);
        const double p1 = 1e-5, p2 = 2e-5;
        const double slope = std::log(v(p2) / v(p1)) / std::log(p2 / p1);
        CHECK(slope == doctest::Approx(0.5).epsilon(1e-6));
    }
}

TEST_CASE("mollification is monotone in eps for the gaussian mollifier") {
    const SpectralDensity d = SpectralDensity::dirac();
    const SpectralDensity v1 = mollified_density(d, Mollifier::gaussian(0.1));
    const SpectralDensity v2 = mollified_density(d, Mollifier::gaussian(0.2));
    for (double p = 0.0; p < 30.0; p += 0.37) CHECK(v2(p) <= v1(p) + 1e-15);
}

TEST_CASE("window budget is monotone in the scan range and bounded") {
    const SpectralDensity b = SpectralDensity::bump();
    const double w2 = b.window_budget(2.0);
    const double w8 = b.window_budget(8.0);
    CHECK(w8 >= w2 - 1e-12);
    CHECK(w8 <= b.tail_budget() + 1e-9);
    const SpectralDensity pw = SpectralDensity::power(-0.5);
    CHECK(pw.window_budget(4.0) == doctest::Approx(2.0).epsilon(1e-4));  // int_0^1 p^{-1/2} = 2
}

TEST_CASE("grad kernel on the grid") {
    const GridSpec grid{32.0, 4096};
    const SpectralDensity d = SpectralDensity::dirac();
    const Mollifier m = Mollifier::gaussian(0.1);
    const std::vector<double> k = grad_kernel_on_grid(d, m, grid);

    SUBCASE("odd under reflection and zero at the origin") {
        CHECK(k[0] == doctest::Approx(0.0).epsilon(1e-12));
        for (std::size_t j = 1; j < grid.points; ++j)
            CHECK(k[grid.points - j] == doctest::Approx(-k[j]).epsilon(1e-9));
    }
    SUBCASE("discrete sum vanishes") {
        double s = 0.0;
        for (double x : k) s += x;
        CHECK(std::fabs(s) < 1e-7);
    }
    SUBCASE("matches the continuum quadrature oracle at the extremum") {
        std::size_t jmax = 0;
        for (std::size_t j = 0; j < grid.points; ++j)
            if (std::fabs(k[j]) > std::fabs(k[jmax])) jmax = j;
        const double x = grid.dx() * static_cast<double>(jmax);
        const double oracle = grad_kernel_continuum(d, m, x > 16.0 ? x - 32.0 : x);
        CHECK(k[jmax] == doctest::Approx(oracle).epsilon(1e-6));
    }
    SUBCASE("under-resolved kernel rejected") {
        CHECK_THROWS(grad_kernel_on_grid(d, Mollifier::gaussian(0.01), grid));
    }
}

TEST_CASE("rescaled density evaluates Vhat(N p)") {
    const SpectralDensity p = SpectralDensity::power(0.5);
    const SpectralDensity p2 = p.rescaled(2.0);
    CHECK(p2(0.3) == doctest::Approx(p(0.6)).epsilon(1e-14));
    CHECK(SpectralDensity::dirac().rescaled(2.0)(1.7) == 1.0);
}

} // TEST_SUITE
