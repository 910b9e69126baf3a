#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bsq/grid.hpp"

namespace bsq {

struct ConfigError : std::runtime_error {
    ConfigError(int line, const std::string& key, const std::string& what)
        : std::runtime_error("config line " + std::to_string(line) + (key.empty() ? "" : " key '" + key + "'") +
                             ": " + what),
          line(line),
          key(key) {}
    int line;
    std::string key;
};

/// Flat key = value run configuration. Unknown keys are rejected; missing
/// keys take the defaults below.
struct RunConfig {
    int n = 128;
    double t_end = 1.0;
    double dt_max = 1e-3;
    double cfl_factor = 0.4;
    double sigma = 0.0;
    double gamma = 0.0;
    double nu = 1.0;
    double kappa = 0.0;
    double alpha = 1.0;
    double beta = 1.0;
    std::string init_preset = "taylor_green";  // taylor_green | layered | random | blob
    uint64_t init_seed = 1;
    double init_slope = 3.0;
    int init_kmax = 10;
    double init_amp_omega = 1.0;
    double init_amp_theta = 1.0;
    double init_blob_radius = 0.5;
    double q_norm = 3.0;
    bool dealias = true;
    std::string output_dir = "out";
    double snapshot_interval = 0.25;
    double series_interval = 0.01;
    double blowup_cap = 1e6;

    bool operator==(const RunConfig&) const = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double parse_double(int line, const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError(line, key, "not a number: '" + v + "'");
    }
}

inline int parse_int(int line, const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return static_cast<int>(x);
    } catch (...) {
        throw ConfigError(line, key, "not an integer: '" + v + "'");
    }
}

inline uint64_t parse_u64(int line, const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError(line, key, "not an unsigned integer: '" + v + "'");
    }
}

inline bool parse_bool(int line, const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    throw ConfigError(line, key, "not a boolean: '" + v + "'");
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, int> seen;  // key -> line, for range errors after parse
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(lineno, "", "expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(lineno, "", "empty key");
        if (val.empty()) throw ConfigError(lineno, key, "empty value");
        if (seen.count(key)) throw ConfigError(lineno, key, "duplicate key");
        seen[key] = lineno;

        using namespace detail;
        if (key == "n") cfg.n = parse_int(lineno, key, val);
        else if (key == "t_end") cfg.t_end = parse_double(lineno, key, val);
        else if (key == "dt_max") cfg.dt_max = parse_double(lineno, key, val);
        else if (key == "cfl_factor") cfg.cfl_factor = parse_double(lineno, key, val);
        else if (key == "sigma") cfg.sigma = parse_double(lineno, key, val);
        else if (key == "gamma") cfg.gamma = parse_double(lineno, key, val);
        else if (key == "nu") cfg.nu = parse_double(lineno, key, val);
        else if (key == "kappa") cfg.kappa = parse_double(lineno, key, val);
        else if (key == "alpha") cfg.alpha = parse_double(lineno, key, val);
        else if (key == "beta") cfg.beta = parse_double(lineno, key, val);
        else if (key == "init_preset") cfg.init_preset = val;
        else if (key == "init_seed") cfg.init_seed = parse_u64(lineno, key, val);
        else if (key == "init_slope") cfg.init_slope = parse_double(lineno, key, val);
        else if (key == "init_kmax") cfg.init_kmax = parse_int(lineno, key, val);
        else if (key == "init_amp_omega") cfg.init_amp_omega = parse_double(lineno, key, val);
        else if (key == "init_amp_theta") cfg.init_amp_theta = parse_double(lineno, key, val);
        else if (key == "init_blob_radius") cfg.init_blob_radius = parse_double(lineno, key, val);
        else if (key == "q_norm") cfg.q_norm = parse_double(lineno, key, val);
        else if (key == "dealias") cfg.dealias = parse_bool(lineno, key, val);
        else if (key == "output_dir") cfg.output_dir = val;
        else if (key == "snapshot_interval") cfg.snapshot_interval = parse_double(lineno, key, val);
        else if (key == "series_interval") cfg.series_interval = parse_double(lineno, key, val);
        else if (key == "blowup_cap") cfg.blowup_cap = parse_double(lineno, key, val);
        else throw ConfigError(lineno, key, "unknown key");
    }

    auto fail = [&](const std::string& key, const std::string& msg) {
        throw ConfigError(seen.count(key) ? seen[key] : 0, key, msg);
    };
    if (cfg.n < 8 || !is_power_of_two(cfg.n)) fail("n", "must be a power of two >= 8");
    if (!(cfg.t_end > 0.0)) fail("t_end", "must be > 0");
    if (!(cfg.dt_max > 0.0)) fail("dt_max", "must be > 0");
    if (!(cfg.cfl_factor > 0.0)) fail("cfl_factor", "must be > 0");
    if (cfg.sigma < 0.0) fail("sigma", "out of range: must be >= 0");
    if (cfg.gamma < 0.0) fail("gamma", "out of range: must be >= 0");
    if (cfg.nu < 0.0) fail("nu", "must be >= 0");
    if (cfg.kappa < 0.0) fail("kappa", "must be >= 0");
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) fail("alpha", "must be in (0, 1]");
    if (!(cfg.beta > 0.0 && cfg.beta <= 1.0)) fail("beta", "must be in (0, 1]");
    if (cfg.init_preset != "taylor_green" && cfg.init_preset != "layered" &&
        cfg.init_preset != "random" && cfg.init_preset != "blob")
        fail("init_preset", "must be taylor_green | layered | random | blob");
    if (cfg.init_kmax < 1 || cfg.init_kmax >= cfg.n / 2) fail("init_kmax", "must be in [1, n/2)");
    if (!(cfg.q_norm >= 2.0)) fail("q_norm", "must be >= 2");
    if (!(cfg.snapshot_interval > 0.0)) fail("snapshot_interval", "must be > 0");
    if (!(cfg.series_interval > 0.0)) fail("series_interval", "must be > 0");
    if (!(cfg.blowup_cap > 0.0)) fail("blowup_cap", "must be > 0");
    return cfg;
}

/// Inverse of parse_config: parse(serialize(cfg)) == cfg.
inline std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "n = " << cfg.n << "\n"
        << "t_end = " << cfg.t_end << "\n"
        << "dt_max = " << cfg.dt_max << "\n"
        << "cfl_factor = " << cfg.cfl_factor << "\n"
        << "sigma = " << cfg.sigma << "\n"
        << "gamma = " << cfg.gamma << "\n"
        << "nu = " << cfg.nu << "\n"
        << "kappa = " << cfg.kappa << "\n"
        << "alpha = " << cfg.alpha << "\n"
        << "beta = " << cfg.beta << "\n"
        << "init_preset = " << cfg.init_preset << "\n"
        << "init_seed = " << cfg.init_seed << "\n"
        << "init_slope = " << cfg.init_slope << "\n"
        << "init_kmax = " << cfg.init_kmax << "\n"
        << "init_amp_omega = " << cfg.init_amp_omega << "\n"
        << "init_amp_theta = " << cfg.init_amp_theta << "\n"
        << "init_blob_radius = " << cfg.init_blob_radius << "\n"
        << "q_norm = " << cfg.q_norm << "\n"
        << "dealias = " << (cfg.dealias ? "on" : "off") << "\n"
        << "output_dir = " << cfg.output_dir << "\n"
        << "snapshot_interval = " << cfg.snapshot_interval << "\n"
        << "series_interval = " << cfg.series_interval << "\n"
        << "blowup_cap = " << cfg.blowup_cap << "\n";
    return out.str();
}

}  // namespace bsq
