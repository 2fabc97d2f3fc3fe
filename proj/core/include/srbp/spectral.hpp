#ifndef SRBP_SPECTRAL_HPP
#define SRBP_SPECTRAL_HPP

#include <cstddef>
#include <vector>

#include "srbp/interaction.hpp"

namespace srbp {
namespace spectral {

/// Quadrature value with an explicit tail bracket: the beyond-window
/// remainder is additive in [0, hi - lo], never silently dropped.
struct Bracketed {
    double value = 0.0;  // midpoint of [lo, hi]
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

/// Inner integral beta^2 int Vhat(q) / (lambda + |p+q|^2/2)^s dq at a fixed
/// shift p: adaptive center-region quadrature plus a unit-window tail sum
/// driven by the density's tail budget.
Bracketed inner_integral(const SpectralDensity& spec, double beta, double s, double lambda,
                         double p, double rtol = 1e-8);

/// J^s(lambda): sup over p of the inner integral, maximized on a log-spaced
/// p-grid plus the p -> infinity asymptote; s > 1/2, lambda > 0 required.
Bracketed j_integral(const SpectralDensity& spec, double beta, double s, double lambda,
                     double rtol = 1e-8);

/// <delta_0, (lambda - L0)^{-1} delta_0> = int Vhat(q)/(lambda + q^2/2) dq.
Bracketed free_resolvent(const SpectralDensity& spec, double lambda, double rtol = 1e-8);

/// First-chaos variational lower bound
///   (1/4) int Vhat(p) / (lambda + p^2/2 + p^2 J(lambda, p)) dp
/// with J(lambda, p) = beta^2 int Vhat(q)/(lambda + |p+q|^2/2) dq cached on a
/// log-spaced p-grid.
Bracketed variational_lower_bound(const SpectralDensity& spec, double beta, double lambda,
                                  std::size_t cache_points = 1025, double rtol = 1e-7);

struct ExponentWindow {
    double dhat_lower = 0.0;  // |slope| of the Laplace-domain lower bound
    double dhat_upper = 0.0;
    double msd_lower = 0.0;   // time-domain proxy window
    double msd_upper = 0.0;
};

/// Theorem window: D-hat exponents ((9-2a+a^2)/4, (5-a)/2) and the MSD pair
/// ((5-2a+a^2)/4, (3-a)/2); requires a in (-1, 1).
ExponentWindow laplace_exponent_bounds(double alpha);

struct SlopeFit {
    double slope = 0.0;
    double stderr_ = 0.0;
};

/// Least-squares slope of log y against log x; >= 5 positive points.
SlopeFit fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

struct BoundTable {
    std::vector<double> lambdas;  // strictly decreasing
    std::vector<double> j1;
    std::vector<double> resolvent;
    std::vector<double> lower_bound;
    std::vector<double> lower_bracket;
    std::vector<double> upper_bracket;
};

BoundTable make_bound_table(const SpectralDensity& spec, double beta,
                            const std::vector<double>& lambdas_desc);

} // namespace spectral
} // namespace srbp

#endif
