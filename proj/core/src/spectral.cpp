#include "srbp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "srbp/quadrature.hpp"

namespace srbp {
namespace spectral {

namespace {

// int (lambda + u^2/2)^{-s} du over the whole line (used for the p->inf
// asymptote when Vhat has a nonzero value at infinity).
double whole_line_kernel(double s, double lambda) {
    return std::numbers::sqrt2 * std::pow(lambda, 0.5 - s) * std::sqrt(std::numbers::pi) *
           std::tgamma(s - 0.5) / std::tgamma(s);
}

// Center region: int_{|u| <= R} Vhat(u - p) / (lambda + u^2/2)^s du, with the
// substitution u = p + q. Breakpoints at the kernel peak scale and, when the
// density has an infrared singularity, graded panels around u = p.
double center_region(const SpectralDensity& spec, double s, double lambda, double p,
                     double lo, double hi, double rtol) {
    auto f = [&](double u) { return spec(u - p) / std::pow(lambda + 0.5 * u * u, s); };
    const bool singular = spec.alpha() < 0.0;
    std::vector<double> pts;
    pts.push_back(lo);
    pts.push_back(hi);
    const double lam_w = std::sqrt(lambda);
    for (double m : {1.0, 4.0, 16.0, 64.0}) {
        if (lo < -m * lam_w && -m * lam_w < hi) pts.push_back(-m * lam_w);
        if (lo < m * lam_w && m * lam_w < hi) pts.push_back(m * lam_w);
    }
    if (lo < 0.0 && 0.0 < hi) pts.push_back(0.0);
    // geometric ladder so slowly decaying tails converge without deep bisection
    for (double m = std::max(1.0, 8.0 * lam_w); m < std::max(-lo, hi); m *= 4.0) {
        if (lo < -m && -m < hi) pts.push_back(-m);
        if (lo < m && m < hi) pts.push_back(m);
    }
    double extra = 0.0;
    if (singular && lo < p && p < hi) {
        // carve out [p - d, p + d] and integrate it with grading toward u = p
        const double d = std::min({1.0, p - lo, hi - p});
        extra += quad::integrate_singular_left([&](double t) { return f(p + t); }, 0.0, d, rtol);
        extra += quad::integrate_singular_left([&](double t) { return f(p - t); }, 0.0, d, rtol);
        pts.push_back(p - d);
        pts.push_back(p + d);
        std::sort(pts.begin(), pts.end());
        double total = extra;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (pts[i] >= p - d && pts[i + 1] <= p + d) continue;
            if (pts[i] < pts[i + 1]) total += quad::integrate(f, pts[i], pts[i + 1], rtol);
        }
        return total;
    }
    return quad::integrate(f, pts, rtol);
}

// Tail upper bound beyond |u| > R from the unit-window budget M:
// 2 M sum_{j>=0} (lambda + (R+j)^2/2)^{-s}, summed until negligible and
// closed with the analytic integral remainder (needs s > 1/2).
double tail_upper(double M, double s, double lambda, double R) {
    double acc = 0.0;
    const int jmax = 4096;
    int j = 0;
    for (; j < jmax; ++j) {
        const double edge = R + static_cast<double>(j);
        const double term = std::pow(lambda + 0.5 * edge * edge, -s);
        acc += term;
        if (term < 1e-16 * acc && j > 8) break;
    }
    const double edge = R + static_cast<double>(j + 1);
    // int_edge^inf (u^2/2)^{-s} du = 2^s edge^{1-2s} / (2s - 1)
    acc += std::pow(2.0, s) * std::pow(edge, 1.0 - 2.0 * s) / (2.0 * s - 1.0);
    return 2.0 * M * acc;
}

} // namespace

Bracketed inner_integral(const SpectralDensity& spec, double beta, double s, double lambda,
                         double p, double rtol) {
    if (!(s > 0.5)) throw std::invalid_argument("inner_integral: s must exceed 1/2");
    if (!(lambda > 0.0)) throw std::invalid_argument("inner_integral: lambda must be positive");
    Bracketed out;
    if (beta == 0.0) return out;
    const double b2 = beta * beta;
    const double M = spec.tail_budget();

    double R = std::max({8.0, 4.0 * std::sqrt(lambda), 2.0 * std::fabs(p)});
    double center = center_region(spec, s, lambda, p, -R, R, rtol);
    double tail = tail_upper(M, s, lambda, R);
    // grow the window until the bracket is thin relative to the center value
    for (int it = 0; it < 40 && tail > rtol * std::max(center, 1e-300); ++it) {
        const double R2 = 2.0 * R;
        center += center_region(spec, s, lambda, p, -R2, -R, rtol);
        center += center_region(spec, s, lambda, p, R, R2, rtol);
        R = R2;
        tail = tail_upper(M, s, lambda, R);
    }
    out.lo = b2 * center;
    out.hi = b2 * (center + tail);
    out.value = 0.5 * (out.lo + out.hi);
    return out;
}

Bracketed j_integral(const SpectralDensity& spec, double beta, double s, double lambda,
                     double rtol) {
    if (!(s > 0.5)) throw std::invalid_argument("j_integral: s must exceed 1/2 (divergent otherwise)");
    if (!(lambda > 0.0)) throw std::invalid_argument("j_integral: lambda must be positive");
    Bracketed best;
    if (beta == 0.0) return best;

    const bool translation_invariant = spec.name() == "dirac";
    best = inner_integral(spec, beta, s, lambda, 0.0, rtol);
    if (!translation_invariant) {
        const double pmax = 10.0 * std::max(10.0, spec.tail_budget());
        for (double p = 1e-3; p <= pmax; p *= 4.0) {
            for (double sign : {-1.0, 1.0}) {
                Bracketed c = inner_integral(spec, beta, s, lambda, sign * p, rtol);
                if (c.value > best.value) best = c;
            }
        }
    }
    // p -> infinity asymptote: Vhat's value at infinity times the whole-line kernel
    const double vinf = spec(1e9);
    if (vinf > 0.0) {
        const double a = beta * beta * vinf * whole_line_kernel(s, lambda);
        if (a > best.value) {
            best.value = a;
            best.lo = a;
            best.hi = a;
        }
    }
    return best;
}

Bracketed free_resolvent(const SpectralDensity& spec, double lambda, double rtol) {
    return inner_integral(spec, 1.0, 1.0, lambda, 0.0, rtol);
}

Bracketed variational_lower_bound(const SpectralDensity& spec, double beta, double lambda,
                                  std::size_t cache_points, double rtol) {
    if (!(lambda > 0.0)) throw std::invalid_argument("variational_lower_bound: lambda > 0 required");
    if (beta == 0.0) {
        Bracketed fr = free_resolvent(spec, lambda, rtol);
        return {0.25 * fr.value, 0.25 * fr.lo, 0.25 * fr.hi};
    }
    // cache J(lambda, |p|) on a log grid (inner integral is even in p for even Vhat)
    const double plo = 1e-3 * std::sqrt(lambda);
    const double phi = 1e4 * std::max(1.0, std::sqrt(lambda));
    const std::size_t m = cache_points;
    std::vector<double> logp(m), jlo(m), jhi(m);
    const double l0 = std::log(plo);
    const double dl = (std::log(phi) - l0) / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        logp[i] = l0 + dl * static_cast<double>(i);
        Bracketed c = inner_integral(spec, beta, 1.0, lambda, std::exp(logp[i]), rtol);
        jlo[i] = c.lo;
        jhi[i] = c.hi;
    }
    const Bracketed j_at0 = inner_integral(spec, beta, 1.0, lambda, 0.0, rtol);
    auto jcache = [&](double p, bool upper) -> double {
        const double a = std::fabs(p);
        const std::vector<double>& tab = upper ? jhi : jlo;
        if (a <= plo) return upper ? std::max(j_at0.hi, tab[0]) : std::min(j_at0.lo, tab[0]);
        const double x = std::log(a);
        if (x >= logp.back()) return tab.back();
        const double fi = (x - l0) / dl;
        const std::size_t i = std::min(static_cast<std::size_t>(fi), m - 2);
        const double t = fi - static_cast<double>(i);
        return (1.0 - t) * tab[i] + t * tab[i + 1];
    };
    // A larger J shrinks the integrand, so the J-bracket propagates inverted.
    auto outer = [&](bool upper) {
        auto f = [&](double p) {
            const double j = jcache(p, !upper);
            return spec(p) / (lambda + 0.5 * p * p + p * p * j);
        };
        std::vector<double> pts{-phi, phi, 0.0};
        for (double sc : {std::sqrt(lambda), 1.0}) {
            for (double mf : {1.0, 8.0, 64.0}) {
                pts.push_back(sc * mf);
                pts.push_back(-sc * mf);
            }
        }
        for (auto& x : pts) x = std::clamp(x, -phi, phi);
        double v = 0.0;
        if (spec.alpha() < 0.0) {
            const double d = std::min(1.0, phi);
            v += quad::integrate_singular_left([&](double t) { return f(t); }, 0.0, d, rtol);
            v += quad::integrate_singular_left([&](double t) { return f(-t); }, 0.0, d, rtol);
            std::vector<double> outer_pts;
            for (double x : pts)
                if (x <= -d || x >= d) outer_pts.push_back(x);
            outer_pts.push_back(d);
            outer_pts.push_back(-d);
            v += quad::integrate(f, outer_pts, rtol);
        } else {
            v = quad::integrate(f, pts, rtol);
        }
        // window-sum bound for the dropped |p| > phi mass
        const double tail = tail_upper(spec.tail_budget(), 1.0, lambda, phi);
        return upper ? v + tail : v;
    };
    Bracketed out;
    out.lo = 0.25 * outer(false);
    out.hi = 0.25 * outer(true);
    out.value = 0.5 * (out.lo + out.hi);
    return out;
}

ExponentWindow laplace_exponent_bounds(double alpha) {
    if (!(alpha > -1.0 && alpha < 1.0))
        throw std::invalid_argument("laplace_exponent_bounds: alpha must lie in (-1, 1)");
    ExponentWindow w;
    w.dhat_lower = (9.0 - 2.0 * alpha + alpha * alpha) / 4.0;
    w.dhat_upper = (5.0 - alpha) / 2.0;
    w.msd_lower = (5.0 - 2.0 * alpha + alpha * alpha) / 4.0;
    w.msd_upper = (3.0 - alpha) / 2.0;
    return w;
}

SlopeFit fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 5)
        throw std::invalid_argument("fit_loglog_slope: need >= 5 points");
    const std::size_t n = xs.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_loglog_slope: inputs must be positive");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - my - fit.slope * (lx[i] - mx);
        ssr += r * r;
    }
    fit.stderr_ = std::sqrt(ssr / (static_cast<double>(n - 2) * sxx));
    return fit;
}

BoundTable make_bound_table(const SpectralDensity& spec, double beta,
                            const std::vector<double>& lambdas_desc) {
    for (std::size_t i = 0; i + 1 < lambdas_desc.size(); ++i)
        if (!(lambdas_desc[i] > lambdas_desc[i + 1]))
            throw std::invalid_argument("make_bound_table: lambdas must be strictly decreasing");
    BoundTable t;
    t.lambdas = lambdas_desc;
    for (double lam : lambdas_desc) {
        t.j1.push_back(j_integral(spec, beta, 1.0, lam).value);
        t.resolvent.push_back(free_resolvent(spec, lam).value);
        Bracketed lb = variational_lower_bound(spec, beta, lam);
        t.lower_bound.push_back(lb.value);
        t.lower_bracket.push_back(lb.lo);
        t.upper_bracket.push_back(lb.hi);
    }
    return t;
}

} // namespace spectral
} // namespace srbp
