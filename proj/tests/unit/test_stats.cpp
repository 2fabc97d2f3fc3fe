#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "srbp/stats.hpp"

using namespace srbp;

namespace {

PathRecord synthetic_path(const std::vector<double>& times, double sign, double power) {
    PathRecord p;
    p.times = times;
    for (double t : times) {
        p.X.push_back(sign * std::pow(t, power));
        p.B.push_back(0.0);
        p.A.push_back(0.0);
    }
    return p;
}

} // namespace

TEST_SUITE("stats") {

TEST_CASE("compensated sums are order-insensitive") {
    std::vector<double> xs;
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 5000; ++i) xs.push_back(u(gen) * std::pow(10.0, i % 10));
    const double a = stats::compensated_sum(xs);
    std::shuffle(xs.begin(), xs.end(), gen);
    const double b = stats::compensated_sum(xs);
    CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)));
}

TEST_CASE("msd of synthetic ensembles") {
    std::vector<double> times{0.0, 0.5, 1.0, 2.0, 4.0};
    SUBCASE("symmetric +-t^{2/3} pair gives exactly t^{4/3}") {
        std::vector<PathRecord> paths{synthetic_path(times, 1.0, 2.0 / 3.0),
                                      synthetic_path(times, -1.0, 2.0 / 3.0)};
        const stats::MSDCurve c = stats::msd(paths);
        for (std::size_t i = 0; i < times.size(); ++i) {
            CHECK(c.msd[i] == doctest::Approx(std::pow(times[i], 4.0 / 3.0)).epsilon(1e-12));
            CHECK(c.stderr_[i] <= 1e-12);
        }
        CHECK(c.msd[0] == 0.0);
    }
    SUBCASE("single path rejected") {
        std::vector<PathRecord> one{synthetic_path(times, 1.0, 1.0)};
        CHECK_THROWS(stats::msd(one));
    }
    SUBCASE("mismatched record grids rejected") {
        std::vector<PathRecord> two{synthetic_path(times, 1.0, 1.0),
                                    synthetic_path({0.0, 1.0}, 1.0, 1.0)};
        CHECK_THROWS(stats::msd(two));
    }
    SUBCASE("breached paths are excluded and counted") {
        std::vector<PathRecord> ps{synthetic_path(times, 1.0, 0.5), synthetic_path(times, -1.0, 0.5),
                                   synthetic_path(times, 1.0, 2.0)};
        ps[2].breach = true;
        const stats::MSDCurve c = stats::msd(ps);
        CHECK(c.paths_used == 2);
        CHECK(c.paths_breached == 1);
        CHECK(c.msd.back() == doctest::Approx(std::pow(4.0, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("laplace transform of power-law curves") {
    stats::MSDCurve c;
    const double tmax = 50.0;
    for (double t = 1e-3; t <= tmax; t *= 1.03) {
        c.times.push_back(t);
        c.msd.push_back(t);
        c.stderr_.push_back(0.0);
    }
    SUBCASE("msd = t transforms to lambda^{-2}") {
        std::vector<double> lams{0.1, 0.2, 0.5, 1.0, 2.0};
        const auto rows = stats::laplace_msd(c, lams);
        for (const auto& r : rows)
            CHECK(r.dhat == doctest::Approx(std::pow(r.lambda, -2.0)).epsilon(0.01));
        std::vector<double> xs, ys;
        for (const auto& r : rows) {
            xs.push_back(r.lambda);
            ys.push_back(r.dhat);
        }
        CHECK(spectral::fit_loglog_slope(xs, ys).slope == doctest::Approx(-2.0).epsilon(0.01));
    }
    SUBCASE("msd = t^{4/3} carries the Gamma factor") {
        stats::MSDCurve c2 = c;
        for (std::size_t i = 0; i < c2.times.size(); ++i) c2.msd[i] = std::pow(c2.times[i], 4.0 / 3.0);
        for (double lam : {0.1, 0.5, 2.0}) {
            const auto rows = stats::laplace_msd(c2, {lam});
            const double want = std::tgamma(7.0 / 3.0) * std::pow(lam, -7.0 / 3.0);
            CHECK(rows[0].dhat == doctest::Approx(want).epsilon(0.01));
        }
    }
    SUBCASE("tail share at lambda = 5/T for a t^{3/2} curve stays below 10%") {
        stats::MSDCurve c3 = c;
        for (std::size_t i = 0; i < c3.times.size(); ++i) c3.msd[i] = std::pow(c3.times[i], 1.5);
        const auto rows = stats::laplace_msd(c3, {5.0 / tmax});
        // closed form: Q(5/2, 5) ~ 0.0912
        CHECK(rows[0].tail_share <= 0.10);
        CHECK(rows[0].tail_share == doctest::Approx(stats::gamma_q(2.5, 5.0)).epsilon(0.05));
    }
    SUBCASE("lambda below the admissible range rejected") {
        CHECK_THROWS(stats::laplace_msd(c, {1.0 / tmax}));
    }
}

TEST_CASE("gamma_q sanity") {
    CHECK(stats::gamma_q(1.0, 0.0) == doctest::Approx(1.0));
    CHECK(stats::gamma_q(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    // Gamma(5/2, 5) / Gamma(5/2)
    CHECK(stats::gamma_q(2.5, 5.0) == doctest::Approx(0.0912).epsilon(0.01));
}

TEST_CASE("superdiffusivity verdicts") {
    stats::MSDCurve c;
    c.eps = 0.05;
    for (double t = 0.05; t <= 50.0; t *= 1.1) c.times.push_back(t);
    SUBCASE("synthetic t^{4/3} passes for alpha = 0") {
        for (double t : c.times) {
            c.msd.push_back(std::pow(t, 4.0 / 3.0));
            c.stderr_.push_back(0.0);
        }
        const stats::Verdict v = stats::superdiffusivity_report(c, 0.0);
        CHECK(v.pass);
        CHECK(v.window_lo == doctest::Approx(1.25));
        CHECK(v.window_hi == doctest::Approx(1.5));
        CHECK(v.msd_fit.slope == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
        CHECK(v.dhat_fit.slope == doctest::Approx(-7.0 / 3.0).epsilon(0.03));
    }
    SUBCASE("diffusive data fails with the diffusive reason") {
        for (double t : c.times) {
            c.msd.push_back(t);
            c.stderr_.push_back(0.0);
        }
        const stats::Verdict v = stats::superdiffusivity_report(c, 0.0);
        CHECK_FALSE(v.pass);
        CHECK(v.reason.find("diffusive") != std::string::npos);
    }
    SUBCASE("window too short rejected") {
        stats::MSDCurve tiny;
        tiny.eps = 0.05;
        tiny.times = {1.0, 2.0, 3.0, 4.0, 5.0};
        tiny.msd = {1.0, 2.0, 3.0, 4.0, 5.0};
        tiny.stderr_ = {0, 0, 0, 0, 0};
        CHECK_THROWS(stats::superdiffusivity_report(tiny, 0.0, 1.0));
    }
}

TEST_CASE("sample moments: SE scales as 1/sqrt(n)") {
    std::mt19937_64 gen(9);
    std::normal_distribution<double> nd(0.0, 2.0);
    std::vector<double> a(4000), b(8000);
    for (auto& x : a) x = nd(gen);
    for (auto& x : b) x = nd(gen);
    const auto ma = stats::moments(a);
    const auto mb = stats::moments(b);
    const double ratio = ma.se_mean / mb.se_mean;
    CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(0.15));
}

} // TEST_SUITE
