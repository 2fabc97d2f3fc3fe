#ifndef SRBP_QUADRATURE_HPP
#define SRBP_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace srbp {
namespace quad {

/// Gauss-Kronrod 7-15 on [a, b]; the error estimate follows QUADPACK.
double gk15(const std::function<double(double)>& f, double a, double b, double& err);

/// Adaptive bisection driven by the embedded G7 error, relative tolerance
/// `rtol` against the running global estimate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rtol = 1e-10, int max_depth = 48);

/// Adaptive integration with interior breakpoints (peaks, scale changes).
double integrate(const std::function<double(double)>& f, const std::vector<double>& pts,
                 double rtol = 1e-10);

/// Integrable power-type singularity of f at x = a: panels graded
/// geometrically toward the endpoint, each handled adaptively.
double integrate_singular_left(const std::function<double(double)>& f, double a, double b,
                               double rtol = 1e-10, int levels = 40);

} // namespace quad
} // namespace srbp

#endif
