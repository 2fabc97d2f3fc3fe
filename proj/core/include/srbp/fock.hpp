#ifndef SRBP_FOCK_HPP
#define SRBP_FOCK_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "srbp/interaction.hpp"

namespace srbp {

using cplx = std::complex<double>;

/// Symmetric 1-d momentum quadrature grid shared by all chaos levels.
struct MomentumGrid {
    std::vector<double> p;  // nodes, symmetric about 0
    std::vector<double> w;  // positive weights, sum ~ 2*cutoff
    double cutoff = 0.0;

    std::size_t size() const { return p.size(); }

    /// Uniform trapezoid rule on [-P, P] with n nodes (n odd keeps 0 on the grid).
    static MomentumGrid uniform(double P, std::size_t n);
    /// Periodic-box lattice p_k = 2*pi*k/L, |k| <= kmax, uniform weights 2*pi/L.
    static MomentumGrid lattice(double L, std::int64_t kmax);
};

/// Wiener-chaos truncation at degree 2: components (psi0, psi1, psi2) over
/// the grid, with the Gaussian weights mu_n = n! prod Vhat(p_i) dp_i carried
/// explicitly by the inner product.
class ChaosKernel {
public:
    ChaosKernel() = default;
    ChaosKernel(std::shared_ptr<const MomentumGrid> grid, std::shared_ptr<const std::vector<double>> vhat);

    static std::shared_ptr<const std::vector<double>> tabulate_density(const MomentumGrid& g,
                                                                       const SpectralDensity& spec);

    const MomentumGrid& grid() const { return *grid_; }
    const std::vector<double>& vhat() const { return *vhat_; }
    std::shared_ptr<const MomentumGrid> grid_handle() const { return grid_; }
    std::shared_ptr<const std::vector<double>> vhat_handle() const { return vhat_; }

    cplx psi0 = 0.0;
    std::vector<cplx> psi1;  // size n
    std::vector<cplx> psi2;  // size n*n, row-major, symmetric

    cplx& at2(std::size_t i, std::size_t j) { return psi2[i * grid_->size() + j]; }
    const cplx& at2(std::size_t i, std::size_t j) const { return psi2[i * grid_->size() + j]; }

    /// Enforce psi2(p,q) = psi2(q,p) and the reality constraint
    /// psi_n(-p) = conj(psi_n(p)) by projection.
    void symmetrize();

    bool chaos3_flag = false;  // set when A+ had to discard chaos-3 output

private:
    std::shared_ptr<const MomentumGrid> grid_;
    std::shared_ptr<const std::vector<double>> vhat_;
};

/// <u, v> = u0 conj(v0) + sum wV psi1 conj + 2 sum wV wV psi2 conj.
cplx inner(const ChaosKernel& u, const ChaosKernel& v);
double norm(const ChaosKernel& u);

/// Multiplier -1/2 |p_{[1:n]}|^2 per component; annihilates chaos 0.
ChaosKernel apply_L0(const ChaosKernel& k);
/// Multiplication by the chaos degree.
ChaosKernel apply_N(const ChaosKernel& k);
/// nabla_0: multiplication by i p_{[1:n]}.
ChaosKernel apply_nabla0(const ChaosKernel& k);

/// Chaos-raising part, degree <= 1 input; nonzero psi2 input sets chaos3_flag
/// on the output (its degree-3 image lies outside the truncation).
ChaosKernel apply_Aplus(const ChaosKernel& k, double beta);
/// Chaos-lowering part: (A- psi)(p) = 2 i beta p int Vhat(q) psi2(q, p) dq.
ChaosKernel apply_Aminus(const ChaosKernel& k, double beta);

/// Weighted norm with multipliers (1 + 1/2 |p_{[1:n]}|^2)^{s/2} (1+n)^{alpha/2}.
double sobolev_norm(const ChaosKernel& k, double s, double alpha);

/// Norm of the discarded chaos-3 image of A+ acting on psi2 (truncation
/// diagnostic; evaluated without forming the degree-3 kernel).
double aplus_chaos3_norm(const ChaosKernel& k, double beta);

/// Random band-limited kernels for property checks (deterministic in seed).
ChaosKernel random_chaos1(std::shared_ptr<const MomentumGrid> g,
                          std::shared_ptr<const std::vector<double>> vhat,
                          std::uint64_t seed, double band_fraction = 0.5);
ChaosKernel random_chaos2(std::shared_ptr<const MomentumGrid> g,
                          std::shared_ptr<const std::vector<double>> vhat,
                          std::uint64_t seed, double band_fraction = 0.5);

struct CheckReport {
    std::string name;
    double max_ratio = 0.0;   // worst observed / allowed
    double tolerance = 0.0;
    int trials = 0;
    bool pass = false;
};

/// ||A+ psi||_{H^{-1}_{a-1}}^2 <= 2^a J1(1) ||psi||_{H^1_a}^2 over random
/// chaos-1 kernels; `j1` is the computed inner-integral constant.
CheckReport graded_sector_check(std::shared_ptr<const MomentumGrid> g,
                                std::shared_ptr<const std::vector<double>> vhat,
                                double beta, double alpha, double j1, int trials,
                                std::uint64_t seed);

/// ||f(N) nabla0 u||^2 = 2 ||f(N) (-L0)^{1/2} u||^2 with f == 1.
CheckReport nabla0_ibp_check(const ChaosKernel& k);

} // namespace srbp

#endif
