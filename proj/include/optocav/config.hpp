// config.hpp — flat `key = value` run configuration, validation and figure presets

#pragma once

#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "optocav/errors.hpp"
#include "optocav/hilbert.hpp"
#include "optocav/lindblad.hpp"

namespace optocav::config {

/// Base for every configuration problem; key() names the offending key when known.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& message)
        : Error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class ParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class ValidationError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class UnknownKey : public ConfigError {
public:
    explicit UnknownKey(const std::string& key) : ConfigError(key, "unknown key") {}
};

class UnknownPreset : public ConfigError {
public:
    explicit UnknownPreset(const std::string& name) : ConfigError("", "unknown preset '" + name + "'") {}
};

struct RunConfig {
    std::string name{"run"};
    SystemParams params{};
    double t_end{4.0 * std::numbers::pi / 0.1};
    double dt{0.005};
    std::size_t sample_stride{10};
    bool emit_eq8{true};
    bool emit_eq9{true};

    lindblad::EvolutionSpec evolution() const {
        return lindblad::EvolutionSpec{t_end, dt, sample_stride, params};
    }

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Keys in canonical print order.
inline const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "name",  "omega_c", "omega_a", "omega_m", "g_ca",      "g_cm",          "kappa",
        "gamma", "mu",      "n_th",    "n_th0",   "d_c",       "d_m",           "frame",
        "t_end", "dt",      "sample_stride",      "emit_eq8",  "emit_eq9"};
    return keys;
}

/// Keys that name a numeric SystemParams field (valid sweep targets).
inline bool is_param_key(std::string_view key) {
    static const std::set<std::string, std::less<>> keys{
        "omega_c", "omega_a", "omega_m", "g_ca", "g_cm", "kappa", "gamma",
        "mu",      "n_th",    "n_th0",   "d_c",  "d_m"};
    return keys.contains(key);
}

/// Shortest decimal text that parses back to exactly `v`.
inline std::string format_exact(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& key, std::string_view text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || text.empty())
        throw ParseError(key, "expected a real number, got '" + std::string(text) + "'");
    if (!std::isfinite(v)) throw ValidationError(key, "must be finite");
    return v;
}

inline long long parse_integer(const std::string& key, std::string_view text) {
    long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty())
        throw ParseError(key, "expected an integer, got '" + std::string(text) + "'");
    return v;
}

inline bool parse_bool(const std::string& key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ParseError(key, "expected true or false, got '" + std::string(text) + "'");
}

inline void require_nonneg(const std::string& key, double v) {
    if (v < 0.0) throw ValidationError(key, "must be >= 0, got " + format_exact(v));
}

} // namespace detail

/// Applies one key/value pair, validating the value on its own.
inline void set_value(RunConfig& cfg, const std::string& key, std::string_view text) {
    using namespace detail;
    auto& p = cfg.params;
    if (key == "name") {
        if (text.empty() || text.find_first_of("/\\") != std::string_view::npos)
            throw ValidationError(key, "must be a non-empty file stem without path separators");
        cfg.name = std::string(text);
    } else if (key == "omega_c") {
        p.omega_c = parse_real(key, text);
    } else if (key == "omega_a") {
        p.omega_a = parse_real(key, text);
    } else if (key == "omega_m") {
        p.omega_m = parse_real(key, text);
        if (p.omega_m != 1.0) throw ValidationError(key, "must be 1 (all quantities are in units of omega_m)");
    } else if (key == "g_ca" || key == "g_cm" || key == "kappa" || key == "gamma" || key == "mu" ||
               key == "n_th" || key == "n_th0") {
        const double v = parse_real(key, text);
        require_nonneg(key, v);
        if (key == "g_ca") p.g_ca = v;
        else if (key == "g_cm") p.g_cm = v;
        else if (key == "kappa") p.kappa = v;
        else if (key == "gamma") p.gamma = v;
        else if (key == "mu") p.mu = v;
        else if (key == "n_th") p.n_th = v;
        else p.n_th0 = v;
    } else if (key == "d_c" || key == "d_m") {
        const long long v = parse_integer(key, text);
        if (v < 2) throw ValidationError(key, "must be >= 2, got " + std::to_string(v));
        (key == "d_c" ? p.d_c : p.d_m) = static_cast<std::size_t>(v);
    } else if (key == "frame") {
        if (text == "lab") p.frame = Frame::lab;
        else if (text == "rotating" || text == "rotating_at_omega_c") p.frame = Frame::rotating_at_omega_c;
        else throw ValidationError(key, "must be 'lab' or 'rotating', got '" + std::string(text) + "'");
    } else if (key == "t_end") {
        cfg.t_end = parse_real(key, text);
        if (!(cfg.t_end > 0.0)) throw ValidationError(key, "must be > 0");
    } else if (key == "dt") {
        cfg.dt = parse_real(key, text);
        if (!(cfg.dt > 0.0)) throw ValidationError(key, "must be > 0");
        if (cfg.dt > lindblad::EvolutionSpec::kMaxStep) throw ValidationError(key, "must be <= 0.02");
    } else if (key == "sample_stride") {
        const long long v = parse_integer(key, text);
        if (v < 1) throw ValidationError(key, "must be >= 1");
        cfg.sample_stride = static_cast<std::size_t>(v);
    } else if (key == "emit_eq8") {
        cfg.emit_eq8 = parse_bool(key, text);
    } else if (key == "emit_eq9") {
        cfg.emit_eq9 = parse_bool(key, text);
    } else {
        throw UnknownKey(key);
    }
}

/// Checks constraints that span several keys.
inline void validate(const RunConfig& cfg) {
    if (cfg.dt > cfg.t_end) throw ValidationError("dt", "must not exceed t_end");
    try {
        cfg.params.validate();
    } catch (const InvalidArgument& e) {
        throw ValidationError("", e.what());
    }
}

/// Parses a configuration document; omitted keys keep the fig2 defaults and
/// t_end defaults to two modulation periods 4π/g_cm.
inline RunConfig parse_config(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    RunConfig cfg;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(detail::trim(line.substr(0, eq)));
        const auto value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("", "line " + std::to_string(line_no) + ": missing key");
        if (seen.contains(key)) throw ParseError(key, "duplicate key");
        seen.insert(key);
        set_value(cfg, key, value);
    }
    if (!seen.contains("t_end") && cfg.params.g_cm > 0.0) cfg.t_end = 4.0 * std::numbers::pi / cfg.params.g_cm;
    validate(cfg);
    return cfg;
}

inline std::string print_config(const RunConfig& cfg) {
    const auto& p = cfg.params;
    std::ostringstream os;
    os << "name = " << cfg.name << '\n'
       << "omega_c = " << format_exact(p.omega_c) << '\n'
       << "omega_a = " << format_exact(p.omega_a) << '\n'
       << "omega_m = " << format_exact(p.omega_m) << '\n'
       << "g_ca = " << format_exact(p.g_ca) << '\n'
       << "g_cm = " << format_exact(p.g_cm) << '\n'
       << "kappa = " << format_exact(p.kappa) << '\n'
       << "gamma = " << format_exact(p.gamma) << '\n'
       << "mu = " << format_exact(p.mu) << '\n'
       << "n_th = " << format_exact(p.n_th) << '\n'
       << "n_th0 = " << format_exact(p.n_th0) << '\n'
       << "d_c = " << p.d_c << '\n'
       << "d_m = " << p.d_m << '\n'
       << "frame = " << (p.frame == Frame::lab ? "lab" : "rotating") << '\n'
       << "t_end = " << format_exact(cfg.t_end) << '\n'
       << "dt = " << format_exact(cfg.dt) << '\n'
       << "sample_stride = " << cfg.sample_stride << '\n'
       << "emit_eq8 = " << (cfg.emit_eq8 ? "true" : "false") << '\n'
       << "emit_eq9 = " << (cfg.emit_eq9 ? "true" : "false") << '\n';
    return os.str();
}

/// Named parameter sets: fig2 (resonant, closed), fig3 (g_ca off resonance), fig4 (detuned, dissipative).
inline RunConfig preset(std::string_view name) {
    RunConfig cfg;
    cfg.name = std::string(name);
    auto& p = cfg.params;
    if (name == "fig2") {
        // resonant, closed system: defaults
    } else if (name == "fig3") {
        p.g_ca = 0.48;
    } else if (name == "fig4") {
        p.omega_a = p.omega_c - 0.01;
        p.g_ca = 0.49;
        p.kappa = 0.02;
        p.gamma = 0.005;
        p.mu = 2e-4;
        p.n_th = 10.0;
        p.n_th0 = 0.5;
        p.d_m = 30;
    } else {
        throw UnknownPreset(std::string(name));
    }
    cfg.t_end = 4.0 * std::numbers::pi / p.g_cm;
    return cfg;
}

} // namespace optocav::config
