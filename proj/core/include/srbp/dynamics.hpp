#ifndef SRBP_DYNAMICS_HPP
#define SRBP_DYNAMICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "srbp/field.hpp"
#include "srbp/interaction.hpp"

namespace srbp {

/// Band-limited periodic test function, held through its positive-k Fourier
/// coefficients (Hermitian extension implied; no DC component, so the
/// H^{-1} norm of l_phi stays finite and additive functionals grow linearly).
struct TestFunction {
    std::string name;
    std::vector<std::pair<std::int64_t, cplx>> modes;  // (k >= 1, c_k)

    /// eta(phi) = 2 L sum_k Re(c^eta_k conj(c_k)) from tracked modes.
    double eta(const FieldState& f) const;
    double eta_grad(const FieldState& f) const;  // eta against phi'
    double eta_lap(const FieldState& f) const;   // eta against phi''

    /// Var_pi eta(phi) = 2 pi L sum_{all k} Vhat^eps(p_k) |c_k|^2.
    double variance_under(const SpectralDensity& spec, const Mollifier& moll,
                          const GridSpec& grid) const;
    /// E[eta(phi') eta(0)] = -4 pi sum_{k>=1} p_k Vhat^eps(p_k) Im c_k,
    /// the V^eps(grad phi) constant in the martingale A-term.
    double vgrad_pair(const SpectralDensity& spec, const Mollifier& moll,
                      const GridSpec& grid) const;

    /// Real-space samples on the grid (test/validation helper).
    std::vector<double> sample_on(const GridSpec& grid) const;
};

/// Three-function default bank: even, odd, and mixed-phase band-pass shapes.
std::vector<TestFunction> default_bank(const GridSpec& grid);

struct SimConfig {
    SpectralDensity spec = SpectralDensity::dirac();
    Mollifier moll = Mollifier::gaussian(0.05);
    GridSpec grid{64.0, 8192};
    double beta = 1.0;
    double dt = 0.0;  // 0 selects the eps^2/10 default
    double horizon = 1.0;
    std::vector<double> record_times;
    std::uint64_t seed = 1;
    bool stationary_start = true;  // else zero field plus deposits
    ShiftMode shift_mode = ShiftMode::lazy;
    bool record_steps = true;      // per-step functional diagnostics
    double kernel_safety = 4.0;

    double resolved_dt() const { return dt > 0.0 ? dt : moll.scale() * moll.scale() / 10.0; }
    /// Empty when valid; otherwise "module: message" per violated precondition.
    std::vector<std::string> validate() const;
};

/// Horizon-length check L >= 20 * T^{(3-alpha)/4}; reported as a warning
/// string (empty if satisfied).
std::string horizon_length_warning(const SimConfig& cfg);

/// Diffusive rescaling (V_N, beta_N) = (Vhat(N .), beta/sqrt(N)) with grid
/// length N L, horizon N^2 T, dt N^2 dt, mollifier scale N eps.
SimConfig rescale_config(const SimConfig& cfg, int n);

/// Shared per-ensemble precomputation: deposit kernel, test bank and its
/// pairing constants, record schedule.
struct DynContext {
    GridKernel kernel;
    std::vector<TestFunction> bank;
    std::vector<double> var_target;   // per bank function
    std::vector<double> vgrad;        // per bank function
    std::vector<std::size_t> record_steps;  // step indices of record times
    std::size_t n_steps = 0;
    std::size_t tracked = 0;

    static DynContext build(const SimConfig& cfg);
    static DynContext build(const SimConfig& cfg, std::vector<TestFunction> bank);
};

struct PathRecord {
    std::vector<double> times;
    std::vector<double> X, B, A;  // A[t] = sum eta_s(0) dt, left-point
    // per bank function, per record time:
    std::vector<std::vector<double>> eta_phi;
    std::vector<std::vector<double>> eta_grad;
    std::vector<std::vector<double>> M;         // martingale residual M_t(l_phi)
    std::vector<std::vector<double>> qv_int;    // int |eta_s(grad phi)|^2 ds
    std::vector<std::vector<double>> qv_real;   // sum (Delta M)^2
    std::vector<std::vector<double>> bhat;      // reconstructed Brownian motion
    std::vector<std::vector<double>> int_phi;   // int eta_s(phi) ds
    std::vector<std::vector<double>> sup_int;   // sup_{s<=t} |int_phi|
    bool breach = false;
    double breach_time = 0.0;
    bool nonfinite = false;
    std::size_t fail_step = 0;
};

/// One Euler-Maruyama step with an externally supplied Brownian increment:
/// read the drift at the particle, lay the interaction wake, then transport
/// field and particle by the full increment.
void step(FieldState& state, const SimConfig& cfg, const DynContext& ctx, double dB);

PathRecord run_path(const SimConfig& cfg, const DynContext& ctx, std::uint64_t path_index);

/// Stored series accessors (error if the run skipped per-step diagnostics).
const std::vector<double>& martingale_residual(const PathRecord& rec, std::size_t j);
const std::vector<double>& reconstruct_brownian(const PathRecord& rec, std::size_t j);

} // namespace srbp

#endif
