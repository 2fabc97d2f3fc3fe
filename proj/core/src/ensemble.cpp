#include "srbp/ensemble.hpp"

#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace srbp {

std::vector<PathRecord> run_ensemble(const SimConfig& cfg, const DynContext& ctx,
                                     std::size_t paths, unsigned threads) {
    if (paths == 0) throw std::invalid_argument("cli: --paths must be positive");
    std::vector<PathRecord> out(paths);
    const unsigned nw = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(paths)));
    if (nw == 1) {
        for (std::size_t i = 0; i < paths; ++i) out[i] = run_path(cfg, ctx, i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_err;  // first error wins
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::mutex err_mu;
    for (unsigned w = 0; w < nw; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= paths || failed.load()) return;
                try {
                    out[i] = run_path(cfg, ctx, i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!first_err) first_err = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_err) std::rethrow_exception(first_err);
    return out;
}

std::vector<PathRecord> run_ensemble(const SimConfig& cfg, std::size_t paths, unsigned threads) {
    const DynContext ctx = DynContext::build(cfg);
    return run_ensemble(cfg, ctx, paths, threads);
}

} // namespace srbp
