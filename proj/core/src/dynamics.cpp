#include "srbp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "srbp/fft.hpp"
#include "srbp/rng.hpp"

namespace srbp {

namespace {

double pair_sum(const FieldState& f, const TestFunction& phi,
                const std::function<cplx(double, cplx)>& weight) {
    const auto& tr = f.tracked_modes();
    const double L = f.grid().length;
    double acc = 0.0;
    for (const auto& [k, c] : phi.modes) {
        const std::size_t ku = static_cast<std::size_t>(k);
        if (ku >= tr.size())
            throw std::out_of_range("TestFunction: mode outside tracked range");
        const double p = f.grid().wavenumber(k);
        acc += 2.0 * (tr[ku] * std::conj(weight(p, c))).real();
    }
    return L * acc;
}

} // namespace

double TestFunction::eta(const FieldState& f) const {
    return pair_sum(f, *this, [](double, cplx c) { return c; });
}

double TestFunction::eta_grad(const FieldState& f) const {
    return pair_sum(f, *this, [](double p, cplx c) { return cplx(0.0, p) * c; });
}

double TestFunction::eta_lap(const FieldState& f) const {
    return pair_sum(f, *this, [](double p, cplx c) { return -p * p * c; });
}

double TestFunction::variance_under(const SpectralDensity& spec, const Mollifier& moll,
                                    const GridSpec& grid) const {
    const SpectralDensity veps = mollified_density(spec, moll);
    double acc = 0.0;
    for (const auto& [k, c] : modes) acc += veps(grid.wavenumber(k)) * std::norm(c);
    return 2.0 * std::numbers::pi * grid.length * 2.0 * acc;
}

double TestFunction::vgrad_pair(const SpectralDensity& spec, const Mollifier& moll,
                                const GridSpec& grid) const {
    const SpectralDensity veps = mollified_density(spec, moll);
    double acc = 0.0;
    for (const auto& [k, c] : modes) {
        const double p = grid.wavenumber(k);
        acc += p * veps(p) * c.imag();
    }
    return -4.0 * std::numbers::pi * acc;
}

std::vector<double> TestFunction::sample_on(const GridSpec& grid) const {
    std::vector<cplx> half(grid.points / 2 + 1, 0.0);
    for (const auto& [k, c] : modes) {
        if (static_cast<std::size_t>(k) >= half.size())
            throw std::out_of_range("TestFunction: mode outside grid");
        half[static_cast<std::size_t>(k)] = c;
    }
    return fft::synthesize_real(half, grid.points);
}

std::vector<TestFunction> default_bank(const GridSpec& grid) {
    const double L = grid.length;
    auto normalized = [L](TestFunction f) {
        double s = 0.0;
        for (auto& [k, c] : f.modes) s += std::norm(c);
        const double scale = 1.0 / std::sqrt(4.0 * std::numbers::pi * L * s);
        for (auto& [k, c] : f.modes) c *= scale;  // unit variance under Vhat == 1
        return f;
    };
    TestFunction even{"phi_even", {}};
    for (std::int64_t k = 2; k <= 6; ++k) {
        const double a = std::exp(-0.5 * (k - 4.0) * (k - 4.0));
        even.modes.emplace_back(k, cplx(a, 0.0));
    }
    TestFunction odd{"phi_odd", {}};
    for (std::int64_t k = 3; k <= 9; ++k) {
        const double a = std::exp(-0.25 * (k - 6.0) * (k - 6.0));
        odd.modes.emplace_back(k, cplx(0.0, -a));
    }
    TestFunction mixed{"phi_mixed", {}};
    for (std::int64_t k = 2; k <= 10; ++k) {
        const double a = std::exp(-0.125 * (k - 6.0) * (k - 6.0));
        const double th = 2.399963229728653 * static_cast<double>(k);
        mixed.modes.emplace_back(k, a * cplx(std::cos(th), std::sin(th)));
    }
    return {normalized(even), normalized(odd), normalized(mixed)};
}

std::vector<std::string> SimConfig::validate() const {
    std::vector<std::string> bad;
    try {
        grid.validate();
    } catch (const std::exception& e) {
        bad.emplace_back(std::string("field: ") + e.what());
    }
    if (!(beta >= 0.0)) bad.emplace_back("dynamics: beta must be nonnegative");
    if (!(resolved_dt() > 0.0)) bad.emplace_back("dynamics: dt must be positive");
    if (!(horizon > 0.0)) bad.emplace_back("dynamics: horizon T must be positive");
    if (!(moll.scale() > 0.0)) bad.emplace_back("interaction: mollifier scale must be positive");
    if (grid.points >= 4 && moll.scale() < kernel_safety * grid.dx())
        bad.emplace_back("interaction: mollification scale under-resolved (eps < safety * dx)");
    for (double rt : record_times)
        if (rt < 0.0 || rt > horizon + 1e-12)
            bad.emplace_back("dynamics: record_times must lie in [0, T]");
    if (!std::is_sorted(record_times.begin(), record_times.end()))
        bad.emplace_back("dynamics: record_times must be sorted");
    return bad;
}

std::string horizon_length_warning(const SimConfig& cfg) {
    const double rms = std::pow(cfg.horizon, (3.0 - cfg.spec.alpha()) / 4.0);
    if (cfg.grid.length >= 20.0 * rms) return {};
    return "field: L < 20 * predicted RMS displacement at horizon (wrap-around risk)";
}

SimConfig rescale_config(const SimConfig& cfg, int n) {
    if (n < 1) throw std::invalid_argument("rescale_config: N >= 1 required");
    if (n == 1) return cfg;
    const double nd = static_cast<double>(n);
    SimConfig out = cfg;
    out.spec = cfg.spec.rescaled(nd);
    out.beta = cfg.beta / std::sqrt(nd);
    out.grid.length = cfg.grid.length * nd;
    out.moll = cfg.moll.with_scale(cfg.moll.scale() * nd);
    out.dt = cfg.resolved_dt() * nd * nd;
    out.horizon = cfg.horizon * nd * nd;
    out.record_times.clear();
    for (double t : cfg.record_times) out.record_times.push_back(t * nd * nd);
    return out;
}

DynContext DynContext::build(const SimConfig& cfg) { return build(cfg, default_bank(cfg.grid)); }

DynContext DynContext::build(const SimConfig& cfg, std::vector<TestFunction> bank) {
    const auto bad = cfg.validate();
    if (!bad.empty()) throw std::invalid_argument("SimConfig: " + bad.front());
    DynContext ctx;
    ctx.kernel = GridKernel::from_modes(cfg.grid, [&] {
        const SpectralDensity veps = mollified_density(cfg.spec, cfg.moll);
        const std::size_t n = cfg.grid.points;
        const double w = 2.0 * std::numbers::pi / cfg.grid.length;
        std::vector<cplx> modes(n / 2 + 1, 0.0);
        for (std::size_t k = 1; k < n / 2; ++k) {
            const double p = cfg.grid.wavenumber(static_cast<std::int64_t>(k));
            modes[k] = cplx(0.0, p * veps(p) * w);
        }
        return modes;
    }());
    ctx.bank = std::move(bank);
    std::int64_t kmax = 0;
    for (const auto& f : ctx.bank)
        for (const auto& [k, c] : f.modes) kmax = std::max(kmax, k);
    ctx.tracked = static_cast<std::size_t>(kmax);
    for (const auto& f : ctx.bank) {
        ctx.var_target.push_back(f.variance_under(cfg.spec, cfg.moll, cfg.grid));
        ctx.vgrad.push_back(f.vgrad_pair(cfg.spec, cfg.moll, cfg.grid));
    }
    const double dt = cfg.resolved_dt();
    ctx.n_steps = static_cast<std::size_t>(std::llround(cfg.horizon / dt));
    for (double rt : cfg.record_times) {
        std::size_t s = static_cast<std::size_t>(std::llround(rt / dt));
        ctx.record_steps.push_back(std::min(s, ctx.n_steps));
    }
    return ctx;
}

void step(FieldState& state, const SimConfig& cfg, const DynContext& ctx, double dB) {
    const double dt = cfg.resolved_dt();
    const double eta0 = state.read_at_particle();
    const double drift = -cfg.beta * eta0;
    const double delta = dB + drift * dt;
    state.deposit_kernel(ctx.kernel, cfg.beta * dt);
    state.shift(delta);
    state.set_position(state.position() + delta);
    state.advance_time(dt);
}

PathRecord run_path(const SimConfig& cfg, const DynContext& ctx, std::uint64_t path_index) {
    const double dt = cfg.resolved_dt();
    const double sqdt = std::sqrt(dt);
    const std::uint64_t pseed = rng::path_seed(cfg.seed, path_index);
    const std::uint64_t inckey = rng::derive_key(pseed, rng::kTagIncrements);

    FieldState f = cfg.stationary_start
                       ? sample_field(pseed, cfg.spec, cfg.moll, cfg.grid, ctx.tracked, cfg.shift_mode)
                       : zero_field(cfg.grid, ctx.tracked, cfg.shift_mode);

    const std::size_t nphi = ctx.bank.size();
    PathRecord rec;
    const std::size_t nrec = ctx.record_steps.size();
    rec.times.reserve(nrec);
    auto resize_all = [&](std::vector<std::vector<double>>& v) { v.assign(nphi, {}); };
    resize_all(rec.eta_phi);
    resize_all(rec.eta_grad);
    if (cfg.record_steps) {
        resize_all(rec.M);
        resize_all(rec.qv_int);
        resize_all(rec.qv_real);
        resize_all(rec.bhat);
        resize_all(rec.int_phi);
        resize_all(rec.sup_int);
    }

    double B = 0.0;
    double A = 0.0;
    std::vector<double> M(nphi, 0.0), qv_int(nphi, 0.0), qv_real(nphi, 0.0),
        bhat(nphi, 0.0), int_phi(nphi, 0.0), sup_int(nphi, 0.0);
    std::vector<double> phi_now(nphi, 0.0), grad_now(nphi, 0.0), lap_now(nphi, 0.0);

    const double breach_limit = 0.25 * cfg.grid.length;
    std::size_t next_rec = 0;
    auto take_record = [&]() {
        rec.times.push_back(f.time());
        rec.X.push_back(f.position());
        rec.B.push_back(B);
        rec.A.push_back(A);
        for (std::size_t j = 0; j < nphi; ++j) {
            rec.eta_phi[j].push_back(ctx.bank[j].eta(f));
            rec.eta_grad[j].push_back(ctx.bank[j].eta_grad(f));
            if (cfg.record_steps) {
                rec.M[j].push_back(M[j]);
                rec.qv_int[j].push_back(qv_int[j]);
                rec.qv_real[j].push_back(qv_real[j]);
                rec.bhat[j].push_back(bhat[j]);
                rec.int_phi[j].push_back(int_phi[j]);
                rec.sup_int[j].push_back(sup_int[j]);
            }
        }
    };

    for (std::size_t s = 0; s <= ctx.n_steps; ++s) {
        if (rec.breach || rec.nonfinite) break;  // no records past a failed step
        while (next_rec < nrec && ctx.record_steps[next_rec] == s) {
            take_record();
            ++next_rec;
        }
        if (s == ctx.n_steps) break;

        const double eta0 = f.read_at_particle();
        if (!std::isfinite(eta0)) {
            rec.nonfinite = true;
            rec.fail_step = s;
            break;
        }
        if (cfg.record_steps) {
            for (std::size_t j = 0; j < nphi; ++j) {
                phi_now[j] = ctx.bank[j].eta(f);
                grad_now[j] = ctx.bank[j].eta_grad(f);
                lap_now[j] = ctx.bank[j].eta_lap(f);
                int_phi[j] += phi_now[j] * dt;
                sup_int[j] = std::max(sup_int[j], std::fabs(int_phi[j]));
                qv_int[j] += grad_now[j] * grad_now[j] * dt;
            }
        }
        A += eta0 * dt;

        const double dB = sqdt * rng::normal(inckey, s);
        step(f, cfg, ctx, dB);
        B += dB;

        if (cfg.record_steps) {
            for (std::size_t j = 0; j < nphi; ++j) {
                const double phi_next = ctx.bank[j].eta(f);
                const double a_term = cfg.beta * (grad_now[j] * eta0 - ctx.vgrad[j]);
                const double dM = (phi_next - phi_now[j]) - dt * (0.5 * lap_now[j] + a_term);
                M[j] += dM;
                qv_real[j] += dM * dM;
                // martingale part of d eta(phi) is -eta(grad phi) dB under the
                // pairing eta(grad phi) = int eta phi'; invert with that sign
                // so bhat recovers the driving increments.
                if (grad_now[j] != 0.0) bhat[j] -= dM / grad_now[j];
            }
        }
        if (std::fabs(f.position()) > breach_limit) {
            rec.breach = true;
            rec.breach_time = f.time();
        }
        if (!std::isfinite(f.position())) {
            rec.nonfinite = true;
            rec.fail_step = s;
        }
    }
    return rec;
}

const std::vector<double>& martingale_residual(const PathRecord& rec, std::size_t j) {
    if (j >= rec.M.size() || rec.M[j].empty())
        throw std::invalid_argument("martingale_residual: per-step diagnostics were not recorded");
    return rec.M[j];
}

const std::vector<double>& reconstruct_brownian(const PathRecord& rec, std::size_t j) {
    if (j >= rec.bhat.size() || rec.bhat[j].empty())
        throw std::invalid_argument("reconstruct_brownian: per-step diagnostics were not recorded");
    return rec.bhat[j];
}

} // namespace srbp
