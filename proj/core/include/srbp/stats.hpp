#ifndef SRBP_STATS_HPP
#define SRBP_STATS_HPP

#include <span>
#include <string>
#include <vector>

#include "srbp/dynamics.hpp"
#include "srbp/spectral.hpp"

namespace srbp {
namespace stats {

/// Neumaier compensated sum over a fixed traversal order; reductions built
/// on it are order-insensitive at the 1e-12 level.
double compensated_sum(std::span<const double> xs);

struct SampleMoments {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double se_mean = 0.0;
    double se_variance = 0.0;  // normal-approximation SE of the sample variance
};
SampleMoments moments(std::span<const double> xs);

struct MSDCurve {
    std::vector<double> times;
    std::vector<double> msd;
    std::vector<double> stderr_;
    std::size_t paths_used = 0;
    std::size_t paths_breached = 0;
    double dt = 0.0;
    double eps = 0.0;
};

/// Pointwise mean and standard error of X_t^2 over paths sharing one record
/// grid; breached or non-finite paths are excluded and counted.
MSDCurve msd(const std::vector<PathRecord>& paths);

struct DhatRow {
    double lambda = 0.0;
    double dhat = 0.0;
    double tail_share = 0.0;  // extrapolated-tail fraction of dhat
};

/// Trapezoidal Laplace transform of the empirical MSD plus a fitted
/// power-law tail beyond T_max; requires lambda >= 5 / T_max throughout.
std::vector<DhatRow> laplace_msd(const MSDCurve& curve, const std::vector<double>& lambdas);

/// Upper regularized incomplete gamma Q(s, x) = Gamma(s, x)/Gamma(s).
double gamma_q(double s, double x);

struct Verdict {
    spectral::SlopeFit msd_fit;
    spectral::SlopeFit dhat_fit;
    double window_lo = 0.0;  // theoretical MSD window from the exponent bounds
    double window_hi = 0.0;
    double tolerance = 0.1;
    double fit_tmin = 0.0;
    double fit_tmax = 0.0;
    bool pass = false;
    std::string reason;
    std::string text() const;
};

/// PASS iff the fitted MSD slope lies in [lower - tol, upper + tol] and is
/// >= 1.05 (strict superdiffusivity). Fit window starts at
/// max(fit_tmin, 10 eps^2) and must span at least one decade.
Verdict superdiffusivity_report(const MSDCurve& curve, double alpha, double fit_tmin = 0.0);

} // namespace stats
} // namespace srbp

#endif
