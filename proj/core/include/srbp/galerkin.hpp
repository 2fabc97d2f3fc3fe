#ifndef SRBP_GALERKIN_HPP
#define SRBP_GALERKIN_HPP

#include <memory>
#include <string>
#include <vector>

#include "srbp/dynamics.hpp"
#include "srbp/fock.hpp"

namespace srbp {
namespace galerkin {

/// L^m = L0 + A^m_+ + A^m_- with A^m_\pm = 1_{(1-L0),N <= m} A_\pm 1_{(1-L0),N <= m},
/// the indicator realized as a pointwise mask on 1 + |p_{[1:n]}|^2/2 <= m and n <= m.
class TruncatedGenerator {
public:
    TruncatedGenerator(std::shared_ptr<const MomentumGrid> grid,
                       std::shared_ptr<const std::vector<double>> vhat, double beta, double m);

    ChaosKernel mask(const ChaosKernel& k) const;
    ChaosKernel apply_A(const ChaosKernel& k) const;  // A^m_+ + A^m_-
    ChaosKernel apply(const ChaosKernel& k) const;    // L0 + A^m

    double beta() const { return beta_; }
    double m() const { return m_; }
    const MomentumGrid& grid() const { return *grid_; }
    std::shared_ptr<const MomentumGrid> grid_handle() const { return grid_; }
    std::shared_ptr<const std::vector<double>> vhat_handle() const { return vhat_; }

private:
    std::shared_ptr<const MomentumGrid> grid_;
    std::shared_ptr<const std::vector<double>> vhat_;
    double beta_;
    double m_;
    std::vector<char> mask1_;
    std::vector<char> mask2_;
    bool chaos2_alive_;
    friend class BackwardStepper;
};

TruncatedGenerator truncate_generator(std::shared_ptr<const MomentumGrid> grid,
                                      std::shared_ptr<const std::vector<double>> vhat,
                                      double beta, double m);

struct BackwardOptions {
    double h = 0.0;        // 0 selects min(T/50, 1/(2m))
    double j1 = 0.0;       // computed J^1(1) for the smallness gate
    bool force = false;    // run despite J^1(1) > 1/400
    double blow_up = 3.0;  // failure when ||F||^2 > ||F0||^2 e^{blow_up t}
};

struct BackwardSolution {
    std::vector<double> times;
    std::vector<ChaosKernel> kernels;
    std::vector<double> psi0;
    std::vector<double> norm2;
    std::vector<double> leakage;  // instantaneous chaos-3 production norm
    double h = 0.0;
    double m = 0.0;
    bool forced = false;  // ran outside the smallness hypothesis
};

/// Time-steps dF/dt = L^m F with the exact diagonal integrating factor for
/// L0 and an explicit midpoint for A^m; aborts when the norm outruns the
/// a-priori growth bound.
BackwardSolution solve_backward(const ChaosKernel& f0, const TruncatedGenerator& gen, double T,
                                const std::vector<double>& record_times, BackwardOptions opt);

/// Exact solution of the beta = 0 flow (pure diagonal decay).
ChaosKernel diagonal_flow(const ChaosKernel& f0, double t);

enum class InitialDatum { constant, linear, wick_square };

struct DualityReport {
    std::string f0_name;
    double mc_value = 0.0;
    double mc_stderr = 0.0;
    double galerkin_value = 0.0;
    double bracket = 0.0;  // |psi0_m - psi0_2m| refinement spread
    double m = 0.0;
    bool forced = false;
    bool pass = false;
};

/// Monte-Carlo E[F0(eta_T)] from a stationary ensemble against the psi0
/// component of the backward solution at T, with an m-refinement bracket.
DualityReport duality_check(const SimConfig& cfg, const TestFunction& phi, InitialDatum kind,
                            double m, double T, std::size_t paths, unsigned threads,
                            BackwardOptions opt);

/// Smallest lattice cutoff k such that the discarded Vhat^eps/(1 + p^2/2)
/// lattice mass is below `rel` of the total; never below `kmin`.
std::int64_t lattice_cutoff(const SpectralDensity& spec, const Mollifier& moll,
                            const GridSpec& grid, double rel = 1e-6, std::int64_t kmin = 16);

} // namespace galerkin
} // namespace srbp

#endif
