#include "srbp/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srbp/ensemble.hpp"
#include "srbp/stats.hpp"

namespace srbp {
namespace galerkin {

TruncatedGenerator::TruncatedGenerator(std::shared_ptr<const MomentumGrid> grid,
                                       std::shared_ptr<const std::vector<double>> vhat,
                                       double beta, double m)
    : grid_(std::move(grid)), vhat_(std::move(vhat)), beta_(beta), m_(m) {
    if (!(m_ >= 1.0)) throw std::invalid_argument("truncate_generator: m >= 1 required");
    const std::size_t n = grid_->size();
    mask1_.resize(n);
    mask2_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        mask1_[i] = 1.0 + 0.5 * grid_->p[i] * grid_->p[i] <= m_ ? 1 : 0;
    chaos2_alive_ = m_ >= 2.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double s = grid_->p[i] + grid_->p[j];
            mask2_[i * n + j] = (chaos2_alive_ && 1.0 + 0.5 * s * s <= m_) ? 1 : 0;
        }
}

TruncatedGenerator truncate_generator(std::shared_ptr<const MomentumGrid> grid,
                                      std::shared_ptr<const std::vector<double>> vhat,
                                      double beta, double m) {
    return TruncatedGenerator(std::move(grid), std::move(vhat), beta, m);
}

ChaosKernel TruncatedGenerator::mask(const ChaosKernel& k) const {
    ChaosKernel out = k;
    const std::size_t n = grid_->size();
    for (std::size_t i = 0; i < n; ++i)
        if (!mask1_[i]) out.psi1[i] = 0.0;
    for (std::size_t i = 0; i < n * n; ++i)
        if (!mask2_[i]) out.psi2[i] = 0.0;
    return out;
}

ChaosKernel TruncatedGenerator::apply_A(const ChaosKernel& k) const {
    const ChaosKernel km = mask(k);
    ChaosKernel up = apply_Aplus(km, beta_);
    const ChaosKernel down = apply_Aminus(km, beta_);
    const std::size_t n = grid_->size();
    for (std::size_t i = 0; i < n; ++i) up.psi1[i] = down.psi1[i];
    ChaosKernel out = mask(up);
    out.chaos3_flag = up.chaos3_flag;
    return out;
}

ChaosKernel TruncatedGenerator::apply(const ChaosKernel& k) const {
    ChaosKernel out = apply_A(k);
    const ChaosKernel diag = apply_L0(k);
    out.psi0 = 0.0;  // L0 and A both annihilate chaos 0
    const std::size_t n = grid_->size();
    for (std::size_t i = 0; i < n; ++i) out.psi1[i] += diag.psi1[i];
    for (std::size_t i = 0; i < n * n; ++i) out.psi2[i] += diag.psi2[i];
    return out;
}

namespace {

void apply_diag_exp(ChaosKernel& k, const MomentumGrid& g, double t) {
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) k.psi1[i] *= std::exp(-0.5 * g.p[i] * g.p[i] * t);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double s = g.p[i] + g.p[j];
            k.at2(i, j) *= std::exp(-0.5 * s * s * t);
        }
}

void axpy(ChaosKernel& y, double a, const ChaosKernel& x) {
    y.psi0 += a * x.psi0;
    for (std::size_t i = 0; i < y.psi1.size(); ++i) y.psi1[i] += a * x.psi1[i];
    for (std::size_t i = 0; i < y.psi2.size(); ++i) y.psi2[i] += a * x.psi2[i];
}

} // namespace

ChaosKernel diagonal_flow(const ChaosKernel& f0, double t) {
    ChaosKernel out = f0;
    apply_diag_exp(out, f0.grid(), t);
    return out;
}

BackwardSolution solve_backward(const ChaosKernel& f0, const TruncatedGenerator& gen, double T,
                                const std::vector<double>& record_times, BackwardOptions opt) {
    if (!(T >= 0.0)) throw std::invalid_argument("solve_backward: T >= 0 required");
    if (opt.j1 > 1.0 / 400.0 && !opt.force)
        throw std::invalid_argument(
            "galerkin: smallness gate violated (J1(1) > 1/400); pass force to proceed");
    BackwardSolution sol;
    sol.m = gen.m();
    sol.forced = opt.j1 > 1.0 / 400.0;
    double h = opt.h > 0.0 ? opt.h : std::min(T > 0.0 ? T / 50.0 : 0.02, 0.5 / gen.m());
    const std::size_t nsteps = T > 0.0 ? static_cast<std::size_t>(std::ceil(T / h - 1e-12)) : 0;
    if (nsteps > 0) h = T / static_cast<double>(nsteps);
    sol.h = h;

    std::vector<std::size_t> rec_steps;
    for (double rt : record_times) {
        if (rt < -1e-12 || rt > T + 1e-9)
            throw std::invalid_argument("solve_backward: record times outside [0, T]");
        rec_steps.push_back(static_cast<std::size_t>(std::llround(rt / (h > 0.0 ? h : 1.0))));
    }

    ChaosKernel f = gen.mask(f0);
    f.psi0 = f0.psi0;
    const double n0 = norm(f0);
    const double n02 = n0 * n0;
    const MomentumGrid& g = gen.grid();

    std::size_t next = 0;
    auto record = [&](std::size_t s) {
        while (next < rec_steps.size() && rec_steps[next] == s) {
            sol.times.push_back(static_cast<double>(s) * h);
            sol.kernels.push_back(f);
            sol.psi0.push_back(f.psi0.real());
            const double nn = norm(f);
            sol.norm2.push_back(nn * nn);
            sol.leakage.push_back(aplus_chaos3_norm(gen.mask(f), gen.beta()));
            ++next;
        }
    };

    for (std::size_t s = 0; s <= nsteps; ++s) {
        record(s);
        if (s == nsteps) break;
        // exponential midpoint: U = E_{h/2}(F + h/2 A F); F' = E_h F + h E_{h/2} A U
        ChaosKernel k1 = gen.apply_A(f);
        ChaosKernel u = f;
        axpy(u, 0.5 * h, k1);
        apply_diag_exp(u, g, 0.5 * h);
        ChaosKernel k2 = gen.apply_A(u);
        apply_diag_exp(f, g, h);
        apply_diag_exp(k2, g, 0.5 * h);
        axpy(f, h, k2);
        const double nn = norm(f);
        const double t = static_cast<double>(s + 1) * h;
        if (nn * nn > n02 * std::exp(opt.blow_up * t) + 1e-14)
            throw std::runtime_error("solve_backward: norm growth exceeded the stability bound");
    }
    return sol;
}

std::int64_t lattice_cutoff(const SpectralDensity& spec, const Mollifier& moll,
                            const GridSpec& grid, double rel, std::int64_t kmin) {
    const SpectralDensity veps = mollified_density(spec, moll);
    const std::int64_t kbig = static_cast<std::int64_t>(grid.points / 2);
    std::vector<double> contrib(static_cast<std::size_t>(kbig) + 1, 0.0);
    double total = 0.0;
    for (std::int64_t k = 0; k <= kbig; ++k) {
        const double p = grid.wavenumber(k);
        double v = veps(p);
        if (!std::isfinite(v)) v = 0.0;
        const double c = (k == 0 ? 1.0 : 2.0) * v / (1.0 + 0.5 * p * p);
        contrib[static_cast<std::size_t>(k)] = c;
        total += c;
    }
    double acc = 0.0;
    for (std::int64_t k = kbig; k > kmin; --k) {
        acc += contrib[static_cast<std::size_t>(k)];
        if (acc > rel * total) return std::min(k + 1, kbig);
    }
    return kmin;
}

DualityReport duality_check(const SimConfig& cfg, const TestFunction& phi, InitialDatum kind,
                            double m, double T, std::size_t paths, unsigned threads,
                            BackwardOptions opt) {
    if (!cfg.stationary_start)
        throw std::invalid_argument("duality_check: stationary initialization required");
    DualityReport rep;
    rep.m = m;

    // ---- Galerkin side: lattice Fock space matching the periodic box.
    const std::int64_t kmax = lattice_cutoff(cfg.spec, cfg.moll, cfg.grid);
    auto grid = std::make_shared<const MomentumGrid>(MomentumGrid::lattice(cfg.grid.length, kmax));
    const SpectralDensity veps = mollified_density(cfg.spec, cfg.moll);
    auto vhat = ChaosKernel::tabulate_density(*grid, veps);

    ChaosKernel f0(grid, vhat);
    const double L = cfg.grid.length;
    auto coef_at = [&](std::int64_t k) -> cplx {  // box transform L c_k, Hermitian
        for (const auto& [kk, c] : phi.modes) {
            if (kk == k) return L * c;
            if (kk == -k) return L * std::conj(c);
        }
        return 0.0;
    };
    const std::size_t n = grid->size();
    std::vector<cplx> phihat(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t k = static_cast<std::int64_t>(i) - kmax;
        phihat[i] = coef_at(k);
    }
    const double var_target = phi.variance_under(cfg.spec, cfg.moll, cfg.grid);
    switch (kind) {
        case InitialDatum::constant:
            rep.f0_name = "one";
            f0.psi0 = 1.0;
            break;
        case InitialDatum::linear:
            rep.f0_name = "l_phi";
            f0.psi1 = phihat;
            break;
        case InitialDatum::wick_square:
            rep.f0_name = "wick_square";
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) f0.at2(i, j) = phihat[i] * phihat[j];
            break;
    }

    const TruncatedGenerator gen_m = truncate_generator(grid, vhat, cfg.beta, m);
    const TruncatedGenerator gen_2m = truncate_generator(grid, vhat, cfg.beta, 2.0 * m);
    const BackwardSolution sol_m = solve_backward(f0, gen_m, T, {T}, opt);
    const BackwardSolution sol_2m = solve_backward(f0, gen_2m, T, {T}, opt);
    rep.galerkin_value = sol_2m.psi0.back();
    rep.bracket = std::fabs(sol_2m.psi0.back() - sol_m.psi0.back());
    rep.forced = sol_m.forced;

    // ---- Monte-Carlo side: stationary ensemble evaluated at T.
    SimConfig mc = cfg;
    mc.horizon = T;
    mc.record_times = {T};
    mc.record_steps = false;
    const DynContext ctx = DynContext::build(mc, {phi});
    const std::vector<PathRecord> ens = run_ensemble(mc, ctx, paths, threads);
    std::vector<double> vals;
    vals.reserve(ens.size());
    for (const auto& p : ens) {
        if (p.breach || p.nonfinite || p.eta_phi[0].empty()) continue;
        const double e = p.eta_phi[0].back();
        switch (kind) {
            case InitialDatum::constant: vals.push_back(1.0); break;
            case InitialDatum::linear: vals.push_back(e); break;
            case InitialDatum::wick_square: vals.push_back(e * e - var_target); break;
        }
    }
    const stats::SampleMoments mm = stats::moments(vals);
    rep.mc_value = mm.mean;
    rep.mc_stderr = mm.se_mean;
    rep.pass = std::fabs(rep.mc_value - rep.galerkin_value) <=
               std::max(4.0 * rep.mc_stderr, rep.bracket) + 1e-12;
    return rep;
}

} // namespace galerkin
} // namespace srbp
