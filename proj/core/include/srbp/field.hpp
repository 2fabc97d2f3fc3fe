#ifndef SRBP_FIELD_HPP
#define SRBP_FIELD_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "srbp/interaction.hpp"

namespace srbp {

using cplx = std::complex<double>;

enum class ShiftMode { lazy, spectral };
enum class ReadMode { cubic, spectral };

/// A fixed grid function with everything the stepper needs precomputed:
/// logical samples, half-spectrum modes, and sub-offset sample banks so a
/// deposit centred between nodes stays cheap.
struct GridKernel {
    GridSpec grid;
    std::vector<double> samples;              // K(x_j)
    std::vector<cplx> modes;                  // half-spectrum, k = 0..N/2
    std::vector<std::vector<double>> bank;    // bank[s][j] = K(x_j - s dx/S)
    static constexpr std::size_t kSubOffsets = 16;

    static GridKernel from_samples(const GridSpec& grid, std::vector<double> samples);
    static GridKernel from_modes(const GridSpec& grid, std::vector<cplx> half_modes);
};

/// Environment field in the particle frame. The array stores samples of a
/// periodic function g on the grid as a circular buffer (logical node j at
/// values[(j + base) mod N]); the field itself is eta(x) = g(x + frac) with
/// frac in [0, dx). Whole-cell shifts move `base`, fractional shifts move
/// `frac`, so transport never touches the samples.
///
/// The leading `tracked` modes of eta are carried alongside and updated
/// exactly (phase factors under shifts, mode adds under deposits); all test
/// function evaluations go through them.
class FieldState {
public:
    FieldState() = default;

    const GridSpec& grid() const { return grid_; }
    double time() const { return t_; }
    double position() const { return X_; }
    double sub_grid_offset() const { return frac_; }
    ShiftMode mode() const { return mode_; }
    std::size_t tracked_count() const { return tracked_.size(); }

    void set_time(double t) { t_ = t; }
    void set_position(double x) { X_ = x; }
    void advance_time(double dt) { t_ += dt; }

    /// eta(x + dx) under periodic wrap; requires |dx| < L/4.
    void shift(double dx);

    /// values += weight * kernel, kernel given at logical nodes of g.
    void deposit_pointwise(std::span<const double> kernel, double weight);

    /// eta += weight * K centred on the particle (uses the sub-offset bank
    /// in lazy mode; exact in spectral mode and on the tracked modes).
    void deposit_kernel(const GridKernel& k, double weight);

    /// eta(0): cubic 4-point interpolation at the sub-grid offset, or the
    /// exact mode sum when the state runs in spectral mode.
    double read_at_particle() const;

    /// eta at an arbitrary particle-frame position (test/validation helper).
    double read_at(double x, ReadMode how) const;

    /// Logical-order copy of g (the array as a plain vector).
    std::vector<double> logical_values() const;
    /// eta sampled at the grid nodes of the particle frame (spectral resample).
    std::vector<double> particle_frame_values() const;

    const std::vector<cplx>& tracked_modes() const { return tracked_; }
    std::vector<cplx> full_modes() const;  // half-spectrum of eta

    /// Binary snapshot: 32-byte header (magic "SRB1", u32 N, f64 L, t, X),
    /// then N little-endian f64 particle-frame samples.
    void dump(std::ostream& os) const;
    static FieldState load(std::istream& is, ShiftMode mode = ShiftMode::lazy);

    friend FieldState sample_field(std::uint64_t, const SpectralDensity&, const Mollifier&,
                                   const GridSpec&, std::size_t, ShiftMode);
    friend FieldState zero_field(const GridSpec&, std::size_t, ShiftMode);

private:
    void rebuild_from_modes(const std::vector<cplx>& half);
    std::size_t idx(std::int64_t logical) const {
        const auto n = static_cast<std::int64_t>(grid_.points);
        return static_cast<std::size_t>(((logical + base_) % n + n) % n);
    }

    GridSpec grid_;
    ShiftMode mode_ = ShiftMode::lazy;
    std::vector<double> values_;
    std::int64_t base_ = 0;
    double frac_ = 0.0;
    double X_ = 0.0;
    double t_ = 0.0;
    std::vector<cplx> spectrum_;  // spectral mode only: half-spectrum of eta
    std::vector<cplx> tracked_;   // modes 0..ktrack of eta
};

/// Stationary Gaussian sample with spectrum Vhat^eps: independent mode
/// coefficients of variance (2 pi / L) Vhat^eps(p_k), conjugate-symmetric,
/// deterministic in (seed, mode index).
FieldState sample_field(std::uint64_t seed, const SpectralDensity& spec, const Mollifier& moll,
                        const GridSpec& grid, std::size_t tracked_modes = 0,
                        ShiftMode mode = ShiftMode::lazy);

FieldState zero_field(const GridSpec& grid, std::size_t tracked_modes = 0,
                      ShiftMode mode = ShiftMode::lazy);

/// Copying wrapper matching the value-semantics contract.
FieldState shift_field(const FieldState& s, double dx);
FieldState deposit(const FieldState& s, std::span<const double> kernel, double weight);
double read_at_particle(const FieldState& s);

/// Mode-variance table used by the sampler and by variance oracles:
/// sigma_k^2 = (2 pi / L) Vhat^eps(p_k); a non-integrable infrared value is
/// replaced by the cell integral over |p| <= pi/L.
std::vector<double> mode_variances(const SpectralDensity& spec, const Mollifier& moll,
                                   const GridSpec& grid);

} // namespace srbp

#endif
