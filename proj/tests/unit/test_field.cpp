#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "srbp/dynamics.hpp"
#include "srbp/field.hpp"
#include "srbp/quadrature.hpp"
#include "srbp/stats.hpp"

using namespace srbp;

namespace {

const GridSpec kGrid{16.0, 1024};
const SpectralDensity kDirac = SpectralDensity::dirac();
const Mollifier kMoll = Mollifier::gaussian(0.1);

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_SUITE("field") {

TEST_CASE("zero spectrum gives the zero field") {
    const SpectralDensity zero("zero", [](double) { return 0.0; }, 0.0, 0.0, 0.0);
    const FieldState f = sample_field(3, zero, kMoll, kGrid);
    for (double v : f.logical_values()) CHECK(v == 0.0);
}

TEST_CASE("fixed seed reproduces the field bit for bit") {
    const FieldState a = sample_field(91, kDirac, kMoll, kGrid);
    const FieldState b = sample_field(91, kDirac, kMoll, kGrid);
    const auto va = a.logical_values();
    const auto vb = b.logical_values();
    for (std::size_t i = 0; i < va.size(); ++i) CHECK(va[i] == vb[i]);
    const FieldState c = sample_field(92, kDirac, kMoll, kGrid);
    CHECK(max_abs_diff(va, c.logical_values()) > 0.0);
}

TEST_CASE("sample variance of omega(0) matches the quadrature oracle") {
    // Var omega(0) = sum_k (2 pi / L) Vhat^eps(p_k) ~ int rhohat(eps p)^2 dp
    const double eps = kMoll.scale();
    const double target =
        quad::integrate([eps](double p) { return std::exp(-eps * eps * p * p); }, -400.0, 400.0, 1e-12);
    const std::size_t n = 10000;
    std::vector<double> vals(n);
    for (std::size_t s = 0; s < n; ++s)
        vals[s] = sample_field(1000 + s, kDirac, kMoll, kGrid).read_at_particle();
    const stats::SampleMoments m = stats::moments(vals);
    CHECK(std::fabs(m.variance - target) <= 4.0 * m.se_variance);
}

TEST_CASE("eta_0(phi) is mean-zero gaussian with the covariance-form variance") {
    const auto bank = default_bank(kGrid);
    const TestFunction& phi = bank[2];
    const double target = phi.variance_under(kDirac, kMoll, kGrid);
    const std::size_t n = 2000;
    std::vector<double> vals(n);
    for (std::size_t s = 0; s < n; ++s) {
        const FieldState f = sample_field(77000 + s, kDirac, kMoll, kGrid, 16);
        vals[s] = phi.eta(f);
    }
    const stats::SampleMoments m = stats::moments(vals);
    CHECK(std::fabs(m.mean) <= 4.0 * m.se_mean);
    CHECK(std::fabs(m.variance - target) <= 4.0 * m.se_variance);
    CHECK(std::fabs(m.skewness) <= 4.0 * std::sqrt(6.0 / static_cast<double>(n)));
    CHECK(std::fabs(m.excess_kurtosis) <= 4.0 * std::sqrt(24.0 / static_cast<double>(n)));
}

TEST_CASE("shift semantics") {
    FieldState f = sample_field(5, kDirac, kMoll, kGrid, 8);
    const auto v0 = f.logical_values();
    SUBCASE("dx = 0 is the identity") {
        f.shift(0.0);
        CHECK(max_abs_diff(f.logical_values(), v0) == 0.0);
    }
    SUBCASE("integer shift is a lossless rotation") {
        f.shift(kGrid.dx());
        const auto v1 = f.logical_values();
        for (std::size_t j = 0; j < v0.size(); ++j) CHECK(v1[j] == v0[(j + 1) % v0.size()]);
        CHECK(f.sub_grid_offset() == doctest::Approx(0.0));
    }
    SUBCASE("half-cell shifts compose exactly") {
        FieldState g = f;
        f.shift(0.5 * kGrid.dx());
        f.shift(0.5 * kGrid.dx());
        g.shift(kGrid.dx());
        CHECK(max_abs_diff(f.particle_frame_values(), g.particle_frame_values()) <= 1e-10);
    }
    SUBCASE("shift then unshift restores the field") {
        const double dx = 0.237;
        f.shift(dx);
        f.shift(-dx);
        CHECK(max_abs_diff(f.particle_frame_values(), v0) <= 1e-10);
    }
    SUBCASE("oversized shift rejected") { CHECK_THROWS(f.shift(0.3 * kGrid.length)); }
}

TEST_CASE("reads") {
    SUBCASE("constant field reads the constant") {
        FieldState f = zero_field(kGrid);
        std::vector<double> ones(kGrid.points, 2.5);
        f.deposit_pointwise(ones, 1.0);
        f.shift(0.3 * kGrid.dx());
        CHECK(f.read_at_particle() == doctest::Approx(2.5).epsilon(1e-12));
    }
    SUBCASE("nodal read of a sine") {
        FieldState f = zero_field(kGrid);
        std::vector<double> sine(kGrid.points);
        for (std::size_t j = 0; j < kGrid.points; ++j)
            sine[j] = std::sin(2.0 * std::numbers::pi * static_cast<double>(j) /
                               static_cast<double>(kGrid.points));
        f.deposit_pointwise(sine, 1.0);
        f.shift(7.0 * kGrid.dx());  // particle lands on node 7
        CHECK(f.read_at_particle() == doctest::Approx(sine[7]).epsilon(1e-12));
    }
    SUBCASE("spectral read at a half-cell offset matches the mode-sum oracle") {
        FieldState f = sample_field(13, kDirac, kMoll, kGrid, 0, ShiftMode::spectral);
        const auto modes = f.full_modes();
        const double x = 0.5 * kGrid.dx();
        f.shift(x);
        double oracle = modes[0].real();
        for (std::size_t k = 1; k < kGrid.points / 2; ++k) {
            const double ph = kGrid.wavenumber(static_cast<std::int64_t>(k)) * x;
            oracle += 2.0 * (modes[k] * cplx(std::cos(ph), std::sin(ph))).real();
        }
        oracle += (modes[kGrid.points / 2] *
                   cplx(std::cos(kGrid.wavenumber(static_cast<std::int64_t>(kGrid.points / 2)) * x),
                        std::sin(kGrid.wavenumber(static_cast<std::int64_t>(kGrid.points / 2)) * x)))
                      .real();
        CHECK(f.read_at_particle() == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("deposits") {
    const std::vector<double> kern = grad_kernel_on_grid(kDirac, kMoll, kGrid);
    SUBCASE("weight zero leaves the field unchanged") {
        FieldState f = sample_field(21, kDirac, kMoll, kGrid);
        const auto before = f.logical_values();
        f.deposit_pointwise(kern, 0.0);
        CHECK(max_abs_diff(f.logical_values(), before) == 0.0);
    }
    SUBCASE("single deposit on the zero field") {
        FieldState f = zero_field(kGrid);
        const double w = 0.7 * 1e-3;
        f.deposit_pointwise(kern, w);
        const auto v = f.logical_values();
        for (std::size_t j = 0; j < v.size(); ++j) CHECK(v[j] == w * kern[j]);
    }
    SUBCASE("deposits add linearly") {
        FieldState a = zero_field(kGrid);
        a.deposit_pointwise(kern, 0.3);
        a.deposit_pointwise(kern, 0.4);
        FieldState b = zero_field(kGrid);
        b.deposit_pointwise(kern, 0.7);
        CHECK(max_abs_diff(a.logical_values(), b.logical_values()) <= 1e-15);
    }
    SUBCASE("shape mismatch rejected") {
        FieldState f = zero_field(kGrid);
        std::vector<double> bad(kGrid.points / 2, 0.0);
        CHECK_THROWS(f.deposit_pointwise(bad, 1.0));
    }
    SUBCASE("deposit commutes with shift for spectrally shifted kernels") {
        const double dx = 0.37 * kGrid.dx();
        FieldState base = sample_field(33, kDirac, kMoll, kGrid, 0, ShiftMode::spectral);
        FieldState lhs = base;
        lhs.deposit_pointwise(kern, 0.9);
        lhs.shift(dx);
        // shift the kernel by the same dx before depositing
        std::vector<cplx> km = fft::analyze_real(kern);
        for (std::size_t k = 0; k < km.size(); ++k) {
            const double ph = kGrid.wavenumber(static_cast<std::int64_t>(k)) * dx;
            km[k] *= cplx(std::cos(ph), std::sin(ph));
        }
        km.back() = km.back().real();
        const std::vector<double> kshift = fft::synthesize_real(km, kGrid.points);
        FieldState rhs = base;
        rhs.shift(dx);
        rhs.deposit_pointwise(kshift, 0.9);
        CHECK(max_abs_diff(lhs.particle_frame_values(), rhs.particle_frame_values()) <= 1e-8);
    }
}

TEST_CASE("kernel deposit centred between nodes tracks the exact modes") {
    const GridKernel K = GridKernel::from_samples(kGrid, grad_kernel_on_grid(kDirac, kMoll, kGrid));
    FieldState f = sample_field(55, kDirac, kMoll, kGrid, 12);
    f.shift(0.31 * kGrid.dx());
    f.deposit_kernel(K, 0.02);
    const auto full = f.full_modes();
    const auto& tr = f.tracked_modes();
    for (std::size_t k = 0; k < tr.size(); ++k) CHECK(std::abs(tr[k] - full[k]) <= 2e-4 * (1.0 + std::abs(full[k])));
    // and the tracked modes are exactly the ideal transport+deposit values
    FieldState g = sample_field(55, kDirac, kMoll, kGrid, 12, ShiftMode::spectral);
    g.shift(0.31 * kGrid.dx());
    g.deposit_kernel(K, 0.02);
    for (std::size_t k = 0; k < tr.size(); ++k) CHECK(std::abs(tr[k] - g.tracked_modes()[k]) <= 1e-14);
}

TEST_CASE("snapshot round trip") {
    FieldState f = sample_field(8, kDirac, kMoll, kGrid, 4);
    f.shift(1.234);
    f.set_position(1.234);
    f.set_time(0.5);
    std::stringstream ss;
    f.dump(ss);
    const FieldState g = FieldState::load(ss);
    CHECK(g.grid().points == kGrid.points);
    CHECK(g.grid().length == doctest::Approx(kGrid.length));
    CHECK(g.time() == doctest::Approx(0.5));
    CHECK(g.position() == doctest::Approx(1.234));
    CHECK(max_abs_diff(g.particle_frame_values(), f.particle_frame_values()) <= 1e-10);
}

} // TEST_SUITE
