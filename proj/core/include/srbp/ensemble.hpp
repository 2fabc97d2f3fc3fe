#ifndef SRBP_ENSEMBLE_HPP
#define SRBP_ENSEMBLE_HPP

#include <cstddef>

#include "srbp/dynamics.hpp"

namespace srbp {

/// Runs `paths` independent paths across `threads` workers. Path i is a pure
/// function of (cfg.seed, i), and results land in slot i, so the output is
/// identical for any worker count.
std::vector<PathRecord> run_ensemble(const SimConfig& cfg, const DynContext& ctx,
                                     std::size_t paths, unsigned threads);

std::vector<PathRecord> run_ensemble(const SimConfig& cfg, std::size_t paths, unsigned threads);

} // namespace srbp

#endif
