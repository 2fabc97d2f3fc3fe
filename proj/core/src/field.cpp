#include "srbp/field.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "srbp/fft.hpp"
#include "srbp/quadrature.hpp"
#include "srbp/rng.hpp"

namespace srbp {

GridKernel GridKernel::from_samples(const GridSpec& grid, std::vector<double> samples) {
    if (samples.size() != grid.points) throw std::invalid_argument("GridKernel: sample count mismatch");
    return from_modes(grid, fft::analyze_real(samples));
}

GridKernel GridKernel::from_modes(const GridSpec& grid, std::vector<cplx> half_modes) {
    grid.validate();
    if (half_modes.size() != grid.points / 2 + 1)
        throw std::invalid_argument("GridKernel: need N/2+1 modes");
    GridKernel k;
    k.grid = grid;
    k.modes = std::move(half_modes);
    k.samples = fft::synthesize_real(k.modes, grid.points);
    k.bank.resize(kSubOffsets);
    const std::size_t n = grid.points;
    for (std::size_t s = 0; s < kSubOffsets; ++s) {
        if (s == 0) {
            k.bank[0] = k.samples;
            continue;
        }
        const double d = grid.dx() * static_cast<double>(s) / static_cast<double>(kSubOffsets);
        std::vector<cplx> shifted(k.modes);
        for (std::size_t m = 0; m <= n / 2; ++m) {
            const double ph = -grid.wavenumber(static_cast<std::int64_t>(m)) * d;
            shifted[m] *= cplx(std::cos(ph), std::sin(ph));
        }
        shifted[n / 2] = shifted[n / 2].real();  // keep the synthesis real
        k.bank[s] = fft::synthesize_real(shifted, n);
    }
    return k;
}

std::vector<double> mode_variances(const SpectralDensity& spec, const Mollifier& moll,
                                   const GridSpec& grid) {
    grid.validate();
    const SpectralDensity veps = mollified_density(spec, moll);
    const std::size_t n = grid.points;
    const double w = 2.0 * std::numbers::pi / grid.length;
    std::vector<double> var(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double p = grid.wavenumber(static_cast<std::int64_t>(k));
        double v = veps(p);
        if (!std::isfinite(v)) {
            // infrared-singular density: use the cell integral instead
            const double halfw = 0.5 * w;
            v = quad::integrate_singular_left([&](double q) { return veps(p + q); }, 0.0, halfw) +
                quad::integrate_singular_left([&](double q) { return veps(p - q); }, 0.0, halfw);
            v /= w;
        }
        if (!(v >= 0.0)) throw std::runtime_error("sample_field: density must be nonnegative");
        var[k] = w * v;
    }
    return var;
}

FieldState sample_field(std::uint64_t seed, const SpectralDensity& spec, const Mollifier& moll,
                        const GridSpec& grid, std::size_t tracked_modes, ShiftMode mode) {
    grid.validate();
    if (moll.scale() < 4.0 * grid.dx())
        throw std::invalid_argument("sample_field: grid too coarse for the mollification scale");
    const std::vector<double> var = mode_variances(spec, moll, grid);
    const std::size_t n = grid.points;
    const std::uint64_t key = rng::derive_key(seed, rng::kTagFieldModes);
    std::vector<cplx> half(n / 2 + 1);
    half[0] = std::sqrt(var[0]) * rng::normal(key, 0);
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double sd = std::sqrt(0.5 * var[k]);
        half[k] = cplx(sd * rng::normal(key, 2 * k), sd * rng::normal(key, 2 * k + 1));
    }
    half[n / 2] = std::sqrt(var[n / 2]) * rng::normal(key, 2 * (n / 2));

    FieldState f;
    f.grid_ = grid;
    f.mode_ = mode;
    f.tracked_.assign(std::min(tracked_modes, n / 2) + 1, 0.0);
    f.rebuild_from_modes(half);
    return f;
}

FieldState zero_field(const GridSpec& grid, std::size_t tracked_modes, ShiftMode mode) {
    grid.validate();
    FieldState f;
    f.grid_ = grid;
    f.mode_ = mode;
    f.tracked_.assign(std::min(tracked_modes, grid.points / 2) + 1, 0.0);
    f.rebuild_from_modes(std::vector<cplx>(grid.points / 2 + 1, 0.0));
    return f;
}

void FieldState::rebuild_from_modes(const std::vector<cplx>& half) {
    base_ = 0;
    frac_ = 0.0;
    for (std::size_t k = 0; k < tracked_.size(); ++k) tracked_[k] = half[k];
    if (mode_ == ShiftMode::spectral) {
        spectrum_ = half;
        values_.clear();
    } else {
        values_ = fft::synthesize_real(half, grid_.points);
        spectrum_.clear();
    }
}

void FieldState::shift(double dx) {
    if (!(std::fabs(dx) < 0.25 * grid_.length))
        throw std::invalid_argument("shift_field: |dx| must stay below L/4 per call");
    for (std::size_t k = 1; k < tracked_.size(); ++k) {
        const double ph = grid_.wavenumber(static_cast<std::int64_t>(k)) * dx;
        tracked_[k] *= cplx(std::cos(ph), std::sin(ph));
    }
    if (mode_ == ShiftMode::spectral) {
        const std::size_t n = grid_.points;
        for (std::size_t k = 1; k <= n / 2; ++k) {
            const double ph = grid_.wavenumber(static_cast<std::int64_t>(k)) * dx;
            spectrum_[k] *= cplx(std::cos(ph), std::sin(ph));
        }
        spectrum_[n / 2] = spectrum_[n / 2].real();
        return;
    }
    frac_ += dx;
    const double dxg = grid_.dx();
    const double whole = std::floor(frac_ / dxg);
    if (whole != 0.0) {
        base_ += static_cast<std::int64_t>(whole);
        frac_ -= whole * dxg;
    }
    // roundoff guards at the cell edges
    if (frac_ < 0.0) frac_ = 0.0;
    if (frac_ >= dxg) {
        base_ += 1;
        frac_ -= dxg;
    }
}

void FieldState::deposit_pointwise(std::span<const double> kernel, double weight) {
    if (kernel.size() != grid_.points) throw std::invalid_argument("deposit: kernel shape mismatch");
    if (weight == 0.0) return;
    if (mode_ == ShiftMode::spectral) {
        std::vector<double> arr(kernel.begin(), kernel.end());
        const std::vector<cplx> km = fft::analyze_real(arr);
        for (std::size_t k = 0; k < spectrum_.size(); ++k) spectrum_[k] += weight * km[k];
        for (std::size_t k = 0; k < tracked_.size(); ++k) tracked_[k] += weight * km[k];
        return;
    }
    const std::size_t n = grid_.points;
    for (std::size_t j = 0; j < n; ++j) values_[idx(static_cast<std::int64_t>(j))] += weight * kernel[j];
    if (!tracked_.empty()) {
        std::vector<double> arr(kernel.begin(), kernel.end());
        const std::vector<cplx> km = fft::analyze_real(arr);
        for (std::size_t k = 0; k < tracked_.size(); ++k) {
            const double ph = grid_.wavenumber(static_cast<std::int64_t>(k)) * frac_;
            tracked_[k] += weight * km[k] * cplx(std::cos(ph), std::sin(ph));
        }
    }
}

void FieldState::deposit_kernel(const GridKernel& k, double weight) {
    if (k.samples.size() != grid_.points) throw std::invalid_argument("deposit: kernel shape mismatch");
    if (weight == 0.0) return;
    for (std::size_t m = 0; m < tracked_.size(); ++m) tracked_[m] += weight * k.modes[m];
    if (mode_ == ShiftMode::spectral) {
        for (std::size_t m = 0; m < spectrum_.size(); ++m) spectrum_[m] += weight * k.modes[m];
        return;
    }
    // g(y) += w K(y - frac): blend the two bracketing sub-offset banks.
    const double sf = frac_ / grid_.dx() * static_cast<double>(GridKernel::kSubOffsets);
    std::size_t s0 = static_cast<std::size_t>(sf);
    if (s0 >= GridKernel::kSubOffsets) s0 = GridKernel::kSubOffsets - 1;
    const double a = sf - static_cast<double>(s0);
    const double w0 = weight * (1.0 - a);
    const double w1 = weight * a;
    const std::vector<double>& b0 = k.bank[s0];
    const std::vector<double>& b1 = k.bank[(s0 + 1) % GridKernel::kSubOffsets];
    const std::size_t n = grid_.points;
    const std::size_t mask = n - 1;
    const std::size_t off = static_cast<std::size_t>(((base_ % static_cast<std::int64_t>(n)) + static_cast<std::int64_t>(n))) & mask;
    const bool wrap_next = s0 + 1 == GridKernel::kSubOffsets;  // bank[S] is bank[0] moved one cell
    double* v = values_.data();
    if (!wrap_next) {
        for (std::size_t j = 0; j < n; ++j) v[(j + off) & mask] += w0 * b0[j] + w1 * b1[j];
    } else {
        for (std::size_t j = 0; j < n; ++j)
            v[(j + off) & mask] += w0 * b0[j] + w1 * b1[(j + n - 1) & mask];
    }
}

double FieldState::read_at_particle() const { return read_at(0.0, mode_ == ShiftMode::spectral ? ReadMode::spectral : ReadMode::cubic); }

double FieldState::read_at(double x, ReadMode how) const {
    if (how == ReadMode::spectral || mode_ == ShiftMode::spectral) {
        const std::vector<cplx> half = full_modes();
        const std::size_t n = grid_.points;
        double acc = half[0].real();
        for (std::size_t k = 1; k < n / 2; ++k) {
            const double ph = grid_.wavenumber(static_cast<std::int64_t>(k)) * x;
            acc += 2.0 * (half[k] * cplx(std::cos(ph), std::sin(ph))).real();
        }
        const double phn = grid_.wavenumber(static_cast<std::int64_t>(n / 2)) * x;
        acc += (half[n / 2] * cplx(std::cos(phn), std::sin(phn))).real();
        return acc;
    }
    // eta(x) = g(x + frac): cubic Lagrange on the four bracketing nodes.
    const double dxg = grid_.dx();
    const double pos = (x + frac_) / dxg;
    const double fl = std::floor(pos);
    const double u = pos - fl;
    const std::int64_t j0 = static_cast<std::int64_t>(fl);
    const double gm1 = values_[idx(j0 - 1)];
    const double g0 = values_[idx(j0)];
    const double g1 = values_[idx(j0 + 1)];
    const double g2 = values_[idx(j0 + 2)];
    const double wm1 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double w0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double w1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double w2 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return wm1 * gm1 + w0 * g0 + w1 * g1 + w2 * g2;
}

std::vector<double> FieldState::logical_values() const {
    if (mode_ == ShiftMode::spectral) return fft::synthesize_real(spectrum_, grid_.points);
    std::vector<double> out(grid_.points);
    for (std::size_t j = 0; j < grid_.points; ++j) out[j] = values_[idx(static_cast<std::int64_t>(j))];
    return out;
}

std::vector<cplx> FieldState::full_modes() const {
    if (mode_ == ShiftMode::spectral) return spectrum_;
    std::vector<cplx> half = fft::analyze_real(logical_values());
    for (std::size_t k = 0; k < half.size(); ++k) {
        const double ph = grid_.wavenumber(static_cast<std::int64_t>(k)) * frac_;
        half[k] *= cplx(std::cos(ph), std::sin(ph));
    }
    half.back() = half.back().real();
    return half;
}

std::vector<double> FieldState::particle_frame_values() const {
    return fft::synthesize_real(full_modes(), grid_.points);
}

void FieldState::dump(std::ostream& os) const {
    const char magic[4] = {'S', 'R', 'B', '1'};
    const std::uint32_t n = static_cast<std::uint32_t>(grid_.points);
    const double header[3] = {grid_.length, t_, X_};
    os.write(magic, 4);
    os.write(reinterpret_cast<const char*>(&n), 4);
    os.write(reinterpret_cast<const char*>(header), 24);
    const std::vector<double> vals = particle_frame_values();
    os.write(reinterpret_cast<const char*>(vals.data()), static_cast<std::streamsize>(8 * vals.size()));
}

FieldState FieldState::load(std::istream& is, ShiftMode mode) {
    char magic[4];
    std::uint32_t n = 0;
    double header[3];
    is.read(magic, 4);
    is.read(reinterpret_cast<char*>(&n), 4);
    is.read(reinterpret_cast<char*>(header), 24);
    if (!is || std::memcmp(magic, "SRB1", 4) != 0) throw std::runtime_error("field snapshot: bad header");
    std::vector<double> vals(n);
    is.read(reinterpret_cast<char*>(vals.data()), static_cast<std::streamsize>(8 * n));
    if (!is) throw std::runtime_error("field snapshot: truncated payload");
    FieldState f;
    f.grid_ = GridSpec{header[0], n};
    f.mode_ = mode;
    f.t_ = header[1];
    f.X_ = header[2];
    f.tracked_.assign(1, 0.0);
    f.rebuild_from_modes(fft::analyze_real(vals));
    return f;
}

FieldState shift_field(const FieldState& s, double dx) {
    FieldState out = s;
    out.shift(dx);
    return out;
}

FieldState deposit(const FieldState& s, std::span<const double> kernel, double weight) {
    FieldState out = s;
    out.deposit_pointwise(kernel, weight);
    return out;
}

double read_at_particle(const FieldState& s) { return s.read_at_particle(); }

} // namespace srbp
