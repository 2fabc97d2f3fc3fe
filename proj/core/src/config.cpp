#include "srbp/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace srbp {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

IniData parse_ini(const std::string& text) {
    IniData data;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: malformed section header at line " +
                                            std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            data[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " +
                                        std::to_string(lineno));
        data[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return data;
}

IniData load_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_ini(ss.str());
}

ExperimentConfig ExperimentConfig::from_ini(const IniData& ini) {
    ExperimentConfig c;
    auto get = [&](const char* sec, const char* key) -> const std::string* {
        const auto s = ini.find(sec);
        if (s == ini.end()) return nullptr;
        const auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    };
    auto num = [&](const char* sec, const char* key, double& dst) {
        if (const auto* v = get(sec, key)) dst = std::stod(*v);
    };
    auto str = [&](const char* sec, const char* key, std::string& dst) {
        if (const auto* v = get(sec, key)) dst = *v;
    };
    auto uns = [&](const char* sec, const char* key, std::size_t& dst) {
        if (const auto* v = get(sec, key)) dst = static_cast<std::size_t>(std::stoull(*v));
    };
    str("interaction", "kind", c.kind);
    num("interaction", "alpha", c.alpha);
    num("interaction", "epsilon", c.epsilon);
    str("interaction", "mollifier", c.mollifier);
    num("grid", "L", c.length);
    uns("grid", "N", c.points);
    num("simulation", "beta", c.beta);
    num("simulation", "dt", c.dt);
    num("simulation", "T", c.horizon);
    if (const auto* v = get("simulation", "record_times")) c.record_times = parse_list(*v);
    uns("simulation", "paths", c.paths);
    if (const auto* v = get("simulation", "seed")) c.seed = std::stoull(*v);
    str("simulation", "start", c.start);
    str("simulation", "shift_mode", c.shift_mode);
    if (const auto* v = get("simulation", "record_steps")) c.record_steps = (*v == "true" || *v == "1");
    num("simulation", "fit_tmin", c.fit_tmin);
    num("spectral", "lambda_min", c.lambda_min);
    num("spectral", "lambda_max", c.lambda_max);
    uns("spectral", "lambda_count", c.lambda_count);
    num("galerkin", "m", c.galerkin_m);
    num("galerkin", "h", c.galerkin_h);
    num("galerkin", "T", c.galerkin_T);
    str("output", "directory", c.directory);
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    return from_ini(load_ini(path));
}

SpectralDensity ExperimentConfig::density() const {
    if (kind == "dirac") return SpectralDensity::dirac();
    if (kind == "power") return SpectralDensity::power(alpha);
    if (kind == "bump") return SpectralDensity::bump();
    throw std::invalid_argument("interaction: unknown density kind '" + kind + "'");
}

Mollifier ExperimentConfig::make_mollifier() const {
    if (mollifier == "gaussian") return Mollifier::gaussian(epsilon);
    if (mollifier == "compact") return Mollifier::compact_fourier(epsilon);
    throw std::invalid_argument("interaction: unknown mollifier '" + mollifier + "'");
}

SimConfig ExperimentConfig::sim_config() const {
    const ExperimentConfig r = resolved();
    SimConfig s;
    s.spec = r.density();
    s.moll = r.make_mollifier();
    s.grid = GridSpec{r.length, r.points};
    s.beta = r.beta;
    s.dt = r.dt;
    s.horizon = r.horizon;
    s.record_times = r.record_times;
    s.seed = r.seed;
    s.stationary_start = r.start != "zero";
    s.shift_mode = r.shift_mode == "spectral" ? ShiftMode::spectral : ShiftMode::lazy;
    s.record_steps = r.record_steps;
    return s;
}

std::vector<double> ExperimentConfig::lambda_grid() const {
    std::vector<double> out;
    if (lambda_count == 1) {
        out.push_back(lambda_max);
        return out;
    }
    const double llo = std::log(lambda_min);
    const double lhi = std::log(lambda_max);
    for (std::size_t i = 0; i < lambda_count; ++i)
        out.push_back(std::exp(lhi + (llo - lhi) * static_cast<double>(i) /
                                         static_cast<double>(lambda_count - 1)));
    return out;  // descending
}

std::vector<std::string> ExperimentConfig::validate() const {
    std::vector<std::string> bad;
    if (kind != "dirac" && kind != "power" && kind != "bump")
        bad.push_back("interaction: unknown density kind '" + kind + "'");
    if (kind == "power" && !(alpha > -1.0))
        bad.emplace_back("interaction: power exponent alpha must exceed -1");
    if (mollifier != "gaussian" && mollifier != "compact")
        bad.push_back("interaction: unknown mollifier '" + mollifier + "'");
    if (!(epsilon > 0.0)) bad.emplace_back("interaction: epsilon must be positive");
    if (paths == 0) bad.emplace_back("cli: paths must be positive");
    if (!(lambda_min > 0.0) || !(lambda_max > lambda_min))
        bad.emplace_back("spectral: need 0 < lambda_min < lambda_max");
    if (lambda_count < 1) bad.emplace_back("spectral: lambda_count must be positive");
    if (!(galerkin_m >= 1.0)) bad.emplace_back("galerkin: m >= 1 required");
    if (start != "stationary" && start != "zero")
        bad.emplace_back("dynamics: start must be stationary or zero");
    if (shift_mode != "lazy" && shift_mode != "spectral")
        bad.emplace_back("field: shift_mode must be lazy or spectral");
    if (bad.empty()) {
        try {
            const auto more = sim_config().validate();
            bad.insert(bad.end(), more.begin(), more.end());
        } catch (const std::exception& e) {
            bad.emplace_back(e.what());
        }
    }
    return bad;
}

ExperimentConfig ExperimentConfig::resolved() const {
    ExperimentConfig r = *this;
    if (r.dt <= 0.0) r.dt = r.epsilon * r.epsilon / 10.0;
    if (r.record_times.empty()) {
        // log-spaced schedule from the transient scale to the horizon, plus 0
        const double t0 = std::max(10.0 * r.epsilon * r.epsilon, 4.0 * r.dt);
        r.record_times.push_back(0.0);
        const int n = 33;
        for (int i = 0; i < n; ++i) {
            const double t = t0 * std::pow(r.horizon / t0, static_cast<double>(i) / (n - 1.0));
            r.record_times.push_back(t);
        }
        std::sort(r.record_times.begin(), r.record_times.end());
        r.record_times.erase(std::unique(r.record_times.begin(), r.record_times.end()),
                             r.record_times.end());
    }
    return r;
}

std::string ExperimentConfig::to_ini() const {
    std::ostringstream os;
    os << "[interaction]\n";
    os << "kind = " << kind << "\n";
    os << "alpha = " << fmt17(alpha) << "\n";
    os << "epsilon = " << fmt17(epsilon) << "\n";
    os << "mollifier = " << mollifier << "\n";
    os << "\n[grid]\n";
    os << "L = " << fmt17(length) << "\n";
    os << "N = " << points << "\n";
    os << "\n[simulation]\n";
    os << "beta = " << fmt17(beta) << "\n";
    os << "dt = " << fmt17(dt) << "\n";
    os << "T = " << fmt17(horizon) << "\n";
    os << "record_times = ";
    for (std::size_t i = 0; i < record_times.size(); ++i)
        os << (i ? "," : "") << fmt17(record_times[i]);
    os << "\n";
    os << "paths = " << paths << "\n";
    os << "seed = " << seed << "\n";
    os << "start = " << start << "\n";
    os << "shift_mode = " << shift_mode << "\n";
    os << "record_steps = " << (record_steps ? "true" : "false") << "\n";
    os << "fit_tmin = " << fmt17(fit_tmin) << "\n";
    os << "\n[spectral]\n";
    os << "lambda_min = " << fmt17(lambda_min) << "\n";
    os << "lambda_max = " << fmt17(lambda_max) << "\n";
    os << "lambda_count = " << lambda_count << "\n";
    os << "\n[galerkin]\n";
    os << "m = " << fmt17(galerkin_m) << "\n";
    os << "h = " << fmt17(galerkin_h) << "\n";
    os << "T = " << fmt17(galerkin_T) << "\n";
    os << "\n[output]\n";
    os << "directory = " << directory << "\n";
    return os.str();
}

std::uint64_t ExperimentConfig::hash() const {
    const std::string s = to_ini();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace srbp
