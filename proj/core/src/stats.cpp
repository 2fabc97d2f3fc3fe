#include "srbp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace srbp {
namespace stats {

double compensated_sum(std::span<const double> xs) {
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        const double t = s + x;
        if (std::fabs(s) >= std::fabs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    return s + c;
}

SampleMoments moments(std::span<const double> xs) {
    SampleMoments m;
    m.n = xs.size();
    if (m.n == 0) return m;
    m.mean = compensated_sum(xs) / static_cast<double>(m.n);
    std::vector<double> d2(m.n), d3(m.n), d4(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        const double d = xs[i] - m.mean;
        d2[i] = d * d;
        d3[i] = d2[i] * d;
        d4[i] = d2[i] * d2[i];
    }
    const double nn = static_cast<double>(m.n);
    const double mu2 = compensated_sum(d2) / nn;
    const double mu3 = compensated_sum(d3) / nn;
    const double mu4 = compensated_sum(d4) / nn;
    m.variance = m.n > 1 ? mu2 * nn / (nn - 1.0) : 0.0;
    if (mu2 > 0.0) {
        m.skewness = mu3 / std::pow(mu2, 1.5);
        m.excess_kurtosis = mu4 / (mu2 * mu2) - 3.0;
    }
    m.se_mean = m.n > 1 ? std::sqrt(m.variance / nn) : 0.0;
    m.se_variance = m.n > 1 ? m.variance * std::sqrt(2.0 / (nn - 1.0)) : 0.0;
    return m;
}

MSDCurve msd(const std::vector<PathRecord>& paths) {
    std::vector<const PathRecord*> ok;
    std::size_t breached = 0;
    for (const auto& p : paths) {
        if (p.breach || p.nonfinite) {
            ++breached;
            continue;
        }
        ok.push_back(&p);
    }
    if (ok.size() < 2) throw std::invalid_argument("msd: need >= 2 usable paths");
    const std::vector<double>& t0 = ok.front()->times;
    for (const auto* p : ok)
        if (p->times != t0) throw std::invalid_argument("msd: mismatched record grids");
    MSDCurve c;
    c.times = t0;
    c.paths_used = ok.size();
    c.paths_breached = breached;
    std::vector<double> x2(ok.size());
    for (std::size_t r = 0; r < t0.size(); ++r) {
        for (std::size_t i = 0; i < ok.size(); ++i) x2[i] = ok[i]->X[r] * ok[i]->X[r];
        const SampleMoments m = moments(x2);
        c.msd.push_back(m.mean);
        c.stderr_.push_back(m.se_mean);
    }
    return c;
}

namespace {

// Regularized incomplete gamma by series (x < s+1) or continued fraction.
double gamma_p_series(double s, double x) {
    double ap = s;
    double sum = 1.0 / s;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double gamma_q_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

} // namespace

double gamma_q(double s, double x) {
    if (!(s > 0.0) || x < 0.0) throw std::invalid_argument("gamma_q: need s > 0, x >= 0");
    if (x == 0.0) return 1.0;
    return x < s + 1.0 ? 1.0 - gamma_p_series(s, x) : gamma_q_cf(s, x);
}

std::vector<DhatRow> laplace_msd(const MSDCurve& curve, const std::vector<double>& lambdas) {
    if (curve.times.size() < 5) throw std::invalid_argument("laplace_msd: curve too short");
    const double tmax = curve.times.back();
    for (double lam : lambdas)
        if (!(lam >= 5.0 / tmax))
            throw std::invalid_argument("laplace_msd: lambda below the admissible range 5/T_max");

    // local power law over the last decade for the tail extrapolation
    std::vector<double> ft, fm;
    for (std::size_t i = 0; i < curve.times.size(); ++i)
        if (curve.times[i] >= 0.1 * tmax && curve.msd[i] > 0.0) {
            ft.push_back(curve.times[i]);
            fm.push_back(curve.msd[i]);
        }
    double kappa = 1.0;
    if (ft.size() >= 5) kappa = spectral::fit_loglog_slope(ft, fm).slope;
    const double cfit = curve.msd.back() / std::pow(tmax, kappa);

    std::vector<DhatRow> out;
    for (double lam : lambdas) {
        double trap = 0.0;
        for (std::size_t i = 0; i + 1 < curve.times.size(); ++i) {
            const double h = curve.times[i + 1] - curve.times[i];
            trap += 0.5 * h *
                    (std::exp(-lam * curve.times[i]) * curve.msd[i] +
                     std::exp(-lam * curve.times[i + 1]) * curve.msd[i + 1]);
        }
        // int_tmax^inf e^{-lam t} c t^kappa dt = c lam^{-kappa-1} Gamma(kappa+1, lam tmax)
        const double tail = cfit * std::pow(lam, -kappa - 1.0) * gamma_q(kappa + 1.0, lam * tmax) *
                            std::tgamma(kappa + 1.0);
        DhatRow row;
        row.lambda = lam;
        row.dhat = trap + tail;
        row.tail_share = row.dhat > 0.0 ? tail / row.dhat : 0.0;
        out.push_back(row);
    }
    return out;
}

std::string Verdict::text() const {
    std::ostringstream os;
    os << "fit window t in [" << fit_tmin << ", " << fit_tmax << "]\n";
    os << "msd slope " << msd_fit.slope << " +- " << msd_fit.stderr_ << "\n";
    os << "dhat slope " << dhat_fit.slope << " +- " << dhat_fit.stderr_ << "\n";
    os << "theoretical msd window [" << window_lo << ", " << window_hi << "] tolerance " << tolerance
       << "\n";
    os << (pass ? "PASS" : "FAIL") << " " << reason << "\n";
    return os.str();
}

Verdict superdiffusivity_report(const MSDCurve& curve, double alpha, double fit_tmin) {
    Verdict v;
    const spectral::ExponentWindow w = spectral::laplace_exponent_bounds(alpha);
    v.window_lo = w.msd_lower;
    v.window_hi = w.msd_upper;
    v.fit_tmin = std::max(fit_tmin, 10.0 * curve.eps * curve.eps);
    v.fit_tmax = curve.times.back();
    if (!(v.fit_tmax >= 10.0 * std::max(v.fit_tmin, 1e-300)))
        throw std::invalid_argument("superdiffusivity_report: fit window shorter than one decade");
    std::vector<double> ts, ms;
    for (std::size_t i = 0; i < curve.times.size(); ++i)
        if (curve.times[i] >= v.fit_tmin && curve.msd[i] > 0.0) {
            ts.push_back(curve.times[i]);
            ms.push_back(curve.msd[i]);
        }
    v.msd_fit = spectral::fit_loglog_slope(ts, ms);

    const double tmax = curve.times.back();
    std::vector<double> lams;
    const double llo = std::log(5.0 / tmax);
    const double lhi = std::log(std::min(100.0 / tmax, 1.0 / std::max(v.fit_tmin, 1e-6)));
    const int nl = 25;
    for (int i = 0; i < nl; ++i) lams.push_back(std::exp(llo + (lhi - llo) * i / (nl - 1.0)));
    std::sort(lams.begin(), lams.end());
    std::vector<double> dh;
    std::vector<double> dl;
    for (const DhatRow& r : laplace_msd(curve, lams))
        if (r.tail_share <= 0.10 && r.dhat > 0.0) {
            dl.push_back(r.lambda);
            dh.push_back(r.dhat);
        }
    if (dl.size() >= 5) v.dhat_fit = spectral::fit_loglog_slope(dl, dh);

    const bool in_window =
        v.msd_fit.slope >= v.window_lo - v.tolerance && v.msd_fit.slope <= v.window_hi + v.tolerance;
    const bool super = v.msd_fit.slope >= 1.05;
    v.pass = in_window && super;
    if (!super)
        v.reason = "diffusive (slope < 1.05)";
    else if (!in_window)
        v.reason = "slope outside theoretical window";
    else
        v.reason = "slope within window and strictly superdiffusive";
    return v;
}

} // namespace stats
} // namespace srbp
