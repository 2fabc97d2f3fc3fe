#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "srbp/fft.hpp"
#include "srbp/rng.hpp"

using namespace srbp;

TEST_SUITE("rng") {

TEST_CASE("draws are pure functions of key and counter") {
    const auto key = rng::derive_key(42, rng::kTagIncrements);
    CHECK(rng::normal(key, 7) == rng::normal(key, 7));
    CHECK(rng::normal(key, 7) != rng::normal(key, 8));
    CHECK(rng::normal(key, 7) != rng::normal(rng::derive_key(43, rng::kTagIncrements), 7));
}

TEST_CASE("standard normal moments") {
    const auto key = rng::derive_key(7, rng::kTagFieldModes);
    const std::size_t n = 200000;
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng::normal(key, i);
        s1 += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    CHECK(std::fabs(s1 / n) < 0.01);
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(s4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("path seeds differ per index") {
    CHECK(rng::path_seed(1, 0) != rng::path_seed(1, 1));
    CHECK(rng::path_seed(1, 0) != rng::path_seed(2, 0));
}

} // TEST_SUITE

TEST_SUITE("fft") {

TEST_CASE("synthesis/analysis round trip") {
    const std::size_t n = 64;
    std::vector<cplx> half(n / 2 + 1, 0.0);
    half[0] = 0.3;
    half[3] = cplx(1.0, -0.5);
    half[7] = cplx(-0.2, 0.9);
    half[n / 2] = -0.8;
    const std::vector<double> x = fft::synthesize_real(half, n);
    const std::vector<cplx> back = fft::analyze_real(x);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        CHECK(back[k].real() == doctest::Approx(half[k].real()).epsilon(1e-12));
        CHECK(back[k].imag() == doctest::Approx(half[k].imag()).epsilon(1e-12));
    }
}

TEST_CASE("single mode synthesizes a cosine") {
    const std::size_t n = 32;
    std::vector<cplx> half(n / 2 + 1, 0.0);
    half[2] = cplx(0.5, 0.0);
    const std::vector<double> x = fft::synthesize_real(half, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double want = std::cos(2.0 * 3.14159265358979323846 * 2.0 * j / n);
        CHECK(x[j] == doctest::Approx(want).epsilon(1e-10));
    }
}

} // TEST_SUITE
