#ifndef SRBP_INTERACTION_HPP
#define SRBP_INTERACTION_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace srbp {

/// Periodic spatial grid: N points on [0, L), wavenumbers p_k = 2*pi*k/L
/// for k in (-N/2, N/2].
struct GridSpec {
    double length = 0.0;
    std::size_t points = 0;

    double dx() const { return length / static_cast<double>(points); }
    double wavenumber(std::int64_t k) const;
    void validate() const;  // throws on non-power-of-two or nonpositive sizes
};

/// Interaction function V through its Fourier transform.
///
/// Conventions used throughout: the environment measure pairs as
/// E[w(phi) w(psi)] = \int Vhat(p) phihat(p) conj(psihat(p)) dp with
/// phihat(p) = \int e^{-ipx} phi(x) dx, so the position-space covariance
/// function is V(x) = \int Vhat(p) e^{ipx} dp.
class SpectralDensity {
public:
    SpectralDensity() = default;
    SpectralDensity(std::string name, std::function<double(double)> eval,
                    double alpha, double alpha_star, double tail_budget);

    double operator()(double p) const { return eval_(p); }
    const std::string& name() const { return name_; }
    double alpha() const { return alpha_; }
    double alpha_star() const { return alpha_star_; }
    double tail_budget() const { return tail_budget_; }

    /// Largest window integral sup_z int_z^{z+1} Vhat, scanned numerically
    /// over integer windows inside [-K, K].
    double window_budget(double K) const;

    /// Diffusive rescaling V_N(x) = V(x/N)/N, i.e. Vhat_N(p) = Vhat(N p).
    SpectralDensity rescaled(double n) const;

    // Catalog (Theorem hypothesis family).
    static SpectralDensity dirac();                  // Vhat = 1
    static SpectralDensity power(double alpha);      // min(|p|^a, |p|^{a /\ 0})
    static SpectralDensity bump(double p0 = 1.0);    // compactly supported

private:
    std::string name_ = "dirac";
    std::function<double(double)> eval_ = [](double) { return 1.0; };
    double alpha_ = 0.0;
    double alpha_star_ = 0.0;
    double tail_budget_ = 1.0;
};

/// Positive-definite mollifier of unit mass, held through rhohat.
class Mollifier {
public:
    Mollifier() = default;
    Mollifier(std::string name, std::function<double(double)> fourier_eval, double scale);

    double fourier(double p) const { return fourier_(p); }
    const std::string& name() const { return name_; }
    double scale() const { return scale_; }

    Mollifier with_scale(double eps) const;

    static Mollifier gaussian(double eps);          // rhohat(p) = exp(-p^2/2)
    static Mollifier compact_fourier(double eps);   // rhohat supported in |p| < sqrt(2)

private:
    std::string name_ = "gaussian";
    std::function<double(double)> fourier_ = [](double p) { return std::exp(-0.5 * p * p); };
    double scale_ = 1.0;
};

/// Vhat^eps(p) = rhohat(eps p)^2 Vhat(p); infrared exponents unchanged.
SpectralDensity mollified_density(const SpectralDensity& spec, const Mollifier& moll);

/// Samples of grad V^eps on the periodic grid by inverse Fourier synthesis
/// of (i p) Vhat^eps(p) over grid wavenumbers. Rejects eps < safety * dx.
std::vector<double> grad_kernel_on_grid(const SpectralDensity& spec, const Mollifier& moll,
                                        const GridSpec& grid, double safety = 4.0);

/// grad V^eps(x) by direct continuum quadrature (test oracle / validation).
double grad_kernel_continuum(const SpectralDensity& spec, const Mollifier& moll, double x);

} // namespace srbp

#endif
