#ifndef SRBP_CONFIG_HPP
#define SRBP_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "srbp/dynamics.hpp"

namespace srbp {

/// Plain key-value configuration with bracketed section headers.
using IniData = std::map<std::string, std::map<std::string, std::string>>;

IniData parse_ini(const std::string& text);
IniData load_ini(const std::string& path);

/// Full experiment description; `resolved()` fills defaults so the echoed
/// file reproduces the run byte for byte.
struct ExperimentConfig {
    // [interaction]
    std::string kind = "dirac";      // dirac | power | bump
    double alpha = 0.0;              // power exponent
    double epsilon = 0.05;
    std::string mollifier = "gaussian";  // gaussian | compact
    // [grid]
    double length = 64.0;
    std::size_t points = 8192;
    // [simulation]
    double beta = 1.0;
    double dt = 0.0;  // 0 -> eps^2/10
    double horizon = 1.0;
    std::vector<double> record_times;  // empty -> log-spaced auto schedule
    std::size_t paths = 100;
    std::uint64_t seed = 1;
    std::string start = "stationary";  // stationary | zero
    std::string shift_mode = "lazy";   // lazy | spectral
    bool record_steps = false;
    double fit_tmin = 0.0;
    // [spectral]
    double lambda_min = 1e-8;
    double lambda_max = 1e-2;
    std::size_t lambda_count = 25;
    // [galerkin]
    double galerkin_m = 32.0;
    double galerkin_h = 0.0;
    double galerkin_T = 0.5;
    // [output]
    std::string directory = "out";

    static ExperimentConfig from_ini(const IniData& ini);
    static ExperimentConfig from_file(const std::string& path);

    SpectralDensity density() const;
    Mollifier make_mollifier() const;
    SimConfig sim_config() const;
    std::vector<double> lambda_grid() const;  // descending

    /// One entry per violated precondition, prefixed with the owning module.
    std::vector<std::string> validate() const;

    ExperimentConfig resolved() const;  // defaults filled (dt, record_times)
    std::string to_ini() const;
    std::uint64_t hash() const;  // FNV-1a over the canonical echo
};

} // namespace srbp

#endif
