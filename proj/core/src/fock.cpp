#include "srbp/fock.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "srbp/rng.hpp"

namespace srbp {

MomentumGrid MomentumGrid::uniform(double P, std::size_t n) {
    if (!(P > 0.0) || n < 3) throw std::invalid_argument("MomentumGrid::uniform: bad arguments");
    if (n % 2 == 0) ++n;  // keep 0 and the +-p pairing exact
    MomentumGrid g;
    g.cutoff = P;
    g.p.resize(n);
    g.w.resize(n);
    const double h = 2.0 * P / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        g.p[i] = -P + h * static_cast<double>(i);
        g.w[i] = (i == 0 || i == n - 1) ? 0.5 * h : h;
    }
    g.p[(n - 1) / 2] = 0.0;
    return g;
}

MomentumGrid MomentumGrid::lattice(double L, std::int64_t kmax) {
    if (!(L > 0.0) || kmax < 1) throw std::invalid_argument("MomentumGrid::lattice: bad arguments");
    MomentumGrid g;
    const double base = 2.0 * std::numbers::pi / L;
    g.cutoff = base * static_cast<double>(kmax);
    for (std::int64_t k = -kmax; k <= kmax; ++k) {
        g.p.push_back(base * static_cast<double>(k));
        g.w.push_back(base);
    }
    return g;
}

ChaosKernel::ChaosKernel(std::shared_ptr<const MomentumGrid> grid,
                         std::shared_ptr<const std::vector<double>> vhat)
    : grid_(std::move(grid)), vhat_(std::move(vhat)) {
    const std::size_t n = grid_->size();
    if (vhat_->size() != n) throw std::invalid_argument("ChaosKernel: density table size mismatch");
    psi1.assign(n, 0.0);
    psi2.assign(n * n, 0.0);
}

std::shared_ptr<const std::vector<double>> ChaosKernel::tabulate_density(
    const MomentumGrid& g, const SpectralDensity& spec) {
    auto t = std::make_shared<std::vector<double>>(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double v = spec(g.p[i]);
        if (!std::isfinite(v)) v = 0.0;  // singular node carries no weight
        (*t)[i] = v;
    }
    return t;
}

void ChaosKernel::symmetrize() {
    const std::size_t n = grid_->size();
    auto refl = [n](std::size_t i) { return n - 1 - i; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const cplx s = 0.5 * (at2(i, j) + at2(j, i));
            at2(i, j) = s;
            at2(j, i) = s;
        }
    std::vector<cplx> p1 = psi1;
    for (std::size_t i = 0; i < n; ++i) psi1[i] = 0.5 * (p1[i] + std::conj(p1[refl(i)]));
    std::vector<cplx> p2 = psi2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            at2(i, j) = 0.5 * (p2[i * n + j] + std::conj(p2[refl(i) * n + refl(j)]));
    psi0 = cplx(psi0.real(), 0.0);
}

cplx inner(const ChaosKernel& u, const ChaosKernel& v) {
    const auto& g = u.grid();
    const auto& vh = u.vhat();
    const std::size_t n = g.size();
    cplx acc = u.psi0 * std::conj(v.psi0);
    for (std::size_t i = 0; i < n; ++i)
        acc += g.w[i] * vh[i] * u.psi1[i] * std::conj(v.psi1[i]);
    cplx acc2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = g.w[i] * vh[i];
        if (wi == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j)
            acc2 += wi * g.w[j] * vh[j] * u.at2(i, j) * std::conj(v.at2(i, j));
    }
    return acc + 2.0 * acc2;  // 2! from mu_2
}

double norm(const ChaosKernel& u) { return std::sqrt(std::max(0.0, inner(u, u).real())); }

ChaosKernel apply_L0(const ChaosKernel& k) {
    ChaosKernel out = k;
    out.psi0 = 0.0;
    const auto& p = k.grid().p;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) out.psi1[i] *= -0.5 * p[i] * p[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double s = p[i] + p[j];
            out.at2(i, j) *= -0.5 * s * s;
        }
    return out;
}

ChaosKernel apply_N(const ChaosKernel& k) {
    ChaosKernel out = k;
    out.psi0 = 0.0;
    for (auto& z : out.psi2) z *= 2.0;
    return out;
}

ChaosKernel apply_nabla0(const ChaosKernel& k) {
    ChaosKernel out = k;
    out.psi0 = 0.0;
    const auto& p = k.grid().p;
    const std::size_t n = p.size();
    const cplx I(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) out.psi1[i] *= I * p[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at2(i, j) *= I * (p[i] + p[j]);
    return out;
}

ChaosKernel apply_Aplus(const ChaosKernel& k, double beta) {
    ChaosKernel out(k.grid_handle(), k.vhat_handle());
    const auto& p = k.grid().p;
    const std::size_t n = p.size();
    const cplx half_ib(0.0, 0.5 * beta);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx ti = p[i] * k.psi1[i];
        for (std::size_t j = 0; j < n; ++j)
            out.at2(i, j) = half_ib * (ti + p[j] * k.psi1[j]);
    }
    // A+ annihilates chaos 0; the psi2 image lives in chaos 3 and is dropped.
    for (const auto& z : k.psi2)
        if (z != 0.0) {
            out.chaos3_flag = true;
            break;
        }
    return out;
}

ChaosKernel apply_Aminus(const ChaosKernel& k, double beta) {
    ChaosKernel out(k.grid_handle(), k.vhat_handle());
    const auto& g = k.grid();
    const auto& vh = k.vhat();
    const std::size_t n = g.size();
    const cplx two_ib(0.0, 2.0 * beta);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += g.w[j] * vh[j] * k.at2(j, i);
        out.psi1[i] = two_ib * g.p[i] * s;
    }
    return out;
}

double sobolev_norm(const ChaosKernel& k, double s, double alpha) {
    const auto& g = k.grid();
    const auto& vh = k.vhat();
    const std::size_t n = g.size();
    double acc = std::norm(k.psi0);  // (1 - L0) = 1, (1 + N) = 1 on chaos 0
    const double m1 = std::pow(2.0, alpha);
    for (std::size_t i = 0; i < n; ++i) {
        const double w1 = std::pow(1.0 + 0.5 * g.p[i] * g.p[i], s) * m1;
        acc += g.w[i] * vh[i] * w1 * std::norm(k.psi1[i]);
    }
    const double m2 = std::pow(3.0, alpha);
    double acc2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = g.w[i] * vh[i];
        if (wi == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const double sum = g.p[i] + g.p[j];
            const double w2 = std::pow(1.0 + 0.5 * sum * sum, s) * m2;
            acc2 += wi * g.w[j] * vh[j] * w2 * std::norm(k.at2(i, j));
        }
    }
    return std::sqrt(std::max(0.0, acc + 2.0 * acc2));
}

double aplus_chaos3_norm(const ChaosKernel& k, double beta) {
    // || (i beta / 3) sum_perm p_{[pair]} psi2(pair) ||_{Gamma_3}^2, reduced to
    // O(n^2) sums: 3! (beta^2/9) [3 D + 6 C] with
    //   D = int V^3 |p12 psi2(p1,p2)|^2,  C = int V |g(p1)|^2,
    //   g(p1) = int V(p2) (p1 + p2) psi2(p1, p2) dp2.
    const auto& g = k.grid();
    const auto& vh = k.vhat();
    const std::size_t n = g.size();
    double vtot = 0.0;
    for (std::size_t i = 0; i < n; ++i) vtot += g.w[i] * vh[i];
    double D = 0.0;
    double C = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = g.w[i] * vh[i];
        if (wi == 0.0) continue;
        cplx gi = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double wj = g.w[j] * vh[j];
            const double ps = g.p[i] + g.p[j];
            D += wi * wj * ps * ps * std::norm(k.at2(i, j));
            gi += wj * ps * k.at2(i, j);
        }
        C += wi * std::norm(gi);
    }
    const double b2 = beta * beta / 9.0;
    const double val = 6.0 * b2 * (3.0 * D * vtot + 6.0 * C);
    return std::sqrt(std::max(0.0, val));
}

namespace {

std::size_t reflect(std::size_t i, std::size_t n) { return n - 1 - i; }

} // namespace

ChaosKernel random_chaos1(std::shared_ptr<const MomentumGrid> g,
                          std::shared_ptr<const std::vector<double>> vhat,
                          std::uint64_t seed, double band_fraction) {
    ChaosKernel k(g, vhat);
    const std::size_t n = g->size();
    const double band = band_fraction * g->cutoff;
    const std::uint64_t key = rng::derive_key(seed, rng::kTagKernel);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(g->p[i]) > band) continue;
        k.psi1[i] = cplx(rng::normal(key, 2 * i), rng::normal(key, 2 * i + 1));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = reflect(i, n);
        if (i < r) k.psi1[r] = std::conj(k.psi1[i]);
        if (i == r) k.psi1[i] = k.psi1[i].real();
    }
    return k;
}

ChaosKernel random_chaos2(std::shared_ptr<const MomentumGrid> g,
                          std::shared_ptr<const std::vector<double>> vhat,
                          std::uint64_t seed, double band_fraction) {
    ChaosKernel k(g, vhat);
    const std::size_t n = g->size();
    const double band = band_fraction * g->cutoff;
    const std::uint64_t key = rng::derive_key(seed ^ 0xabcdULL, rng::kTagKernel);
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (std::fabs(g->p[i]) > band || std::fabs(g->p[j]) > band) continue;
            k.at2(i, j) = cplx(rng::normal(key, 2 * c), rng::normal(key, 2 * c + 1));
            ++c;
        }
    k.symmetrize();
    return k;
}

CheckReport graded_sector_check(std::shared_ptr<const MomentumGrid> g,
                                std::shared_ptr<const std::vector<double>> vhat,
                                double beta, double alpha, double j1, int trials,
                                std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("graded_sector_check: trials >= 1 required");
    CheckReport rep;
    rep.name = "graded_sector";
    rep.tolerance = 1.0;
    rep.trials = trials;
    const double bound = std::pow(2.0, alpha) * j1;
    for (int t = 0; t < trials; ++t) {
        ChaosKernel psi = random_chaos1(g, vhat, seed + static_cast<std::uint64_t>(t));
        const double hi = sobolev_norm(apply_Aplus(psi, beta), -1.0, alpha - 1.0);
        const double lo = sobolev_norm(psi, 1.0, alpha);
        if (lo == 0.0) continue;
        const double ratio = bound > 0.0 ? (hi * hi) / (bound * lo * lo) : 0.0;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    rep.pass = rep.max_ratio <= rep.tolerance;
    return rep;
}

CheckReport nabla0_ibp_check(const ChaosKernel& k) {
    CheckReport rep;
    rep.name = "nabla0_ibp";
    rep.tolerance = 1e-10;
    rep.trials = 1;
    const double lhs = norm(apply_nabla0(k));
    // (-L0)^{1/2}: multiplier sqrt(1/2) |p_{[1:n]}|
    ChaosKernel half = k;
    half.psi0 = 0.0;
    const auto& p = k.grid().p;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) half.psi1[i] *= std::sqrt(0.5) * std::fabs(p[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            half.at2(i, j) *= std::sqrt(0.5) * std::fabs(p[i] + p[j]);
    const double rhs2 = 2.0 * norm(half) * norm(half);
    const double lhs2 = lhs * lhs;
    const double scale = std::max({lhs2, rhs2, 1e-300});
    rep.max_ratio = std::fabs(lhs2 - rhs2) / scale;
    rep.pass = rep.max_ratio <= rep.tolerance;
    return rep;
}

} // namespace srbp
