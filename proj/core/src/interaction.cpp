#include "srbp/interaction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "srbp/fft.hpp"
#include "srbp/quadrature.hpp"

namespace srbp {

double GridSpec::wavenumber(std::int64_t k) const {
    return 2.0 * std::numbers::pi * static_cast<double>(k) / length;
}

void GridSpec::validate() const {
    if (!(length > 0.0)) throw std::invalid_argument("grid: length must be positive");
    if (points < 4 || (points & (points - 1)) != 0)
        throw std::invalid_argument("grid: points must be a power of two >= 4");
}

SpectralDensity::SpectralDensity(std::string name, std::function<double(double)> eval,
                                 double alpha, double alpha_star, double tail_budget)
    : name_(std::move(name)), eval_(std::move(eval)), alpha_(alpha),
      alpha_star_(alpha_star), tail_budget_(tail_budget) {}

double SpectralDensity::window_budget(double K) const {
    const auto f = [this](double p) { return eval_(p); };
    double best = 0.0;
    const long n = std::max(1L, static_cast<long>(std::ceil(K)));
    for (long z = -n; z < n; ++z) {
        const double a = static_cast<double>(z);
        double v;
        if (a <= 0.0 && 0.0 < a + 1.0) {
            // window containing the possible infrared singularity
            v = quad::integrate_singular_left([f](double u) { return f(-u); }, 0.0, -a, 1e-9) +
                quad::integrate_singular_left(f, 0.0, a + 1.0, 1e-9);
        } else {
            v = quad::integrate(f, a, a + 1.0, 1e-9);
        }
        best = std::max(best, v);
    }
    return best;
}

SpectralDensity SpectralDensity::rescaled(double n) const {
    if (!(n > 0.0)) throw std::invalid_argument("rescaled: N must be positive");
    auto base = eval_;
    return SpectralDensity(name_ + "_rescaled",
                           [base, n](double p) { return base(n * p); },
                           alpha_, alpha_star_, tail_budget_);
}

SpectralDensity SpectralDensity::dirac() {
    return SpectralDensity("dirac", [](double) { return 1.0; }, 0.0, 0.0, 1.0);
}

SpectralDensity SpectralDensity::power(double alpha) {
    if (!(alpha > -1.0)) throw std::invalid_argument("power density: alpha must exceed -1");
    const double cap = std::min(alpha, 0.0);
    auto eval = [alpha, cap](double p) {
        const double a = std::fabs(p);
        if (a == 0.0) return alpha > 0.0 ? 0.0 : (alpha == 0.0 ? 1.0 : INFINITY);
        return std::min(std::pow(a, alpha), std::pow(a, cap));
    };
    // For alpha >= 0 the density is bounded by 1; for alpha < 0 the worst
    // window is [0,1] with integral 1/(1+alpha).
    const double budget = alpha >= 0.0 ? 1.0 : 1.0 / (1.0 + alpha);
    return SpectralDensity("power", eval, alpha, alpha, budget);
}

SpectralDensity SpectralDensity::bump(double p0) {
    if (!(p0 > 0.0)) throw std::invalid_argument("bump density: p0 must be positive");
    auto eval = [p0](double p) {
        const double x = p / p0;
        if (std::fabs(x) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - x * x));
    };
    return SpectralDensity("bump", eval, 0.0, 0.0, 1.0);
}

Mollifier::Mollifier(std::string name, std::function<double(double)> fourier_eval, double scale)
    : name_(std::move(name)), fourier_(std::move(fourier_eval)), scale_(scale) {
    if (!(scale_ > 0.0)) throw std::invalid_argument("mollifier: scale must be positive");
}

Mollifier Mollifier::with_scale(double eps) const { return Mollifier(name_, fourier_, eps); }

Mollifier Mollifier::gaussian(double eps) {
    return Mollifier("gaussian", [](double p) { return std::exp(-0.5 * p * p); }, eps);
}

Mollifier Mollifier::compact_fourier(double eps) {
    // Smooth bump supported in |p| < a with curvature at 0 matched to the
    // Gaussian (rhohat ~ 1 - p^2/2), so both mollifiers agree to O(p^4).
    const double a = std::numbers::sqrt2;
    return Mollifier("compact_fourier",
                     [a](double p) {
                         const double x = p / a;
                         if (std::fabs(x) >= 1.0) return 0.0;
                         return std::exp(1.0 - 1.0 / (1.0 - x * x));
                     },
                     eps);
}

SpectralDensity mollified_density(const SpectralDensity& spec, const Mollifier& moll) {
    const double eps = moll.scale();
    if (!(eps > 0.0)) throw std::invalid_argument("mollified_density: eps must be positive");
    auto rho = [moll](double p) { return moll.fourier(p); };
    auto base = spec;
    auto eval = [base, rho, eps](double p) {
        const double r = rho(eps * p);
        return r * r * base(p);
    };
    return SpectralDensity(spec.name() + "_eps", eval, spec.alpha(), spec.alpha_star(),
                           spec.tail_budget());
}

std::vector<double> grad_kernel_on_grid(const SpectralDensity& spec, const Mollifier& moll,
                                        const GridSpec& grid, double safety) {
    grid.validate();
    if (moll.scale() < safety * grid.dx())
        throw std::invalid_argument("grad_kernel_on_grid: mollification scale under-resolved by grid");
    const SpectralDensity veps = mollified_density(spec, moll);
    const std::size_t n = grid.points;
    const double w = 2.0 * std::numbers::pi / grid.length;  // mode weight dp
    std::vector<std::complex<double>> modes(n / 2 + 1);
    modes[0] = 0.0;
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double p = grid.wavenumber(static_cast<std::int64_t>(k));
        modes[k] = std::complex<double>(0.0, p * veps(p) * w);
    }
    modes[n / 2] = 0.0;  // Nyquist coefficient of an odd function is zero
    return fft::synthesize_real(modes, n);
}

double grad_kernel_continuum(const SpectralDensity& spec, const Mollifier& moll, double x) {
    const SpectralDensity veps = mollified_density(spec, moll);
    // d/dx int Vhat^eps(p) e^{ipx} dp = -2 int_0^inf p Vhat^eps(p) sin(p x) dp
    const double pmax = 40.0 / moll.scale();
    auto f = [&](double p) { return p * veps(p) * std::sin(p * x); };
    std::vector<double> pts;
    for (double b = 0.0; b <= pmax; b += pmax / 64.0) pts.push_back(b);
    return -2.0 * quad::integrate(f, pts, 1e-11);
}

} // namespace srbp
