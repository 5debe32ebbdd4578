// config.hpp: Run configuration: defaults, key = value files, JSON echo

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bhdimer/analytics.hpp"
#include "bhdimer/errors.hpp"

namespace bhdimer {

enum class LeakageAction { warn, abort };
enum class StateFormat { binary, text };

struct RunConfig {
    // physics
    double J{0.5};
    double U{0.25};
    double Omega{0.70710678118654752}; // 1/sqrt(2)
    double gamma{0.002};
    double detuning_in{-1.5};
    double detuning_f{1.5};
    double sweep_rate{50.0};     // tunneling periods per unit of detuning
    double detuning_sign{-1.0};  // sign of Delta in H
    int n_max{20};
    double dwell_periods{0.0};   // drive kept on at detuning_f before switch-off
    double jo_periods{30.0};
    bool hold_at_final{true};    // Delta after switch-off = detuning_f, else detuning_hold
    double detuning_hold{0.0};
    int project_sector{-1};      // >= 0: JO starts from the normalized R_N block

    // numerics
    double dt_divisor{1000.0};   // dt_max = T / dt_divisor
    double sweep_samples_per_period{8.0};
    double jo_samples_per_period{64.0};
    double leakage_threshold{1e-6};
    int leakage_shells{2};
    LeakageAction leakage_action{LeakageAction::warn};
    bool monitor_positivity{true};
    double trace_abort{1e-6};

    // analytics
    HistogramEvolution reconstruction{HistogramEvolution::shifted};
    FrequencyModel frequency_model{FrequencyModel::josephson};
    double fit_window_periods{0.0}; // 0: automatic (first envelope minimum after collapse)
    bool fit_offset{true};
    double correlation_periods{10.0};

    // output
    std::string output_dir{"out"};
    bool svg{true};
    StateFormat state_format{StateFormat::binary};

    double period() const { return 2.0 * std::numbers::pi / J; }
    double dt_max() const { return period() / dt_divisor; }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
    }
}

inline int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return static_cast<int>(x);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + v + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "': not a boolean: '" + v + "'");
}

inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

template <class E>
struct EnumNames {
    std::vector<std::pair<E, const char*>> names;
    E parse(const std::string& key, const std::string& v) const {
        for (const auto& [e, n] : names)
            if (v == n) return e;
        std::string allowed;
        for (const auto& [e, n] : names) allowed += (allowed.empty() ? "" : ", ") + std::string(n);
        throw ConfigError("config key '" + key + "': '" + v + "' is not one of " + allowed);
    }
    std::string name(E e) const {
        for (const auto& [x, n] : names)
            if (x == e) return n;
        return "?";
    }
};

inline const EnumNames<LeakageAction> kLeakageNames{{{LeakageAction::warn, "warn"}, {LeakageAction::abort, "abort"}}};
inline const EnumNames<StateFormat> kStateFormatNames{{{StateFormat::binary, "binary"}, {StateFormat::text, "text"}}};
inline const EnumNames<HistogramEvolution> kEvolutionNames{
    {{HistogramEvolution::frozen, "frozen"}, {HistogramEvolution::shifted, "shifted"}, {HistogramEvolution::exact, "exact"}}};
inline const EnumNames<FrequencyModel> kFrequencyNames{
    {{FrequencyModel::josephson, "josephson"}, {FrequencyModel::bogoliubov, "bogoliubov"}}};

struct ConfigKey {
    const char* name;
    const char* help;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

#define BHD_DOUBLE(field, help)                                                                     \
    ConfigKey{#field, help, [](RunConfig& c, const std::string& v) { c.field = parse_double(#field, v); }, \
              [](const RunConfig& c) { return fmt_double(c.field); }}
#define BHD_INT(field, help)                                                                        \
    ConfigKey{#field, help, [](RunConfig& c, const std::string& v) { c.field = parse_int(#field, v); }, \
              [](const RunConfig& c) { return std::to_string(c.field); }}
#define BHD_BOOL(field, help)                                                                       \
    ConfigKey{#field, help, [](RunConfig& c, const std::string& v) { c.field = parse_bool(#field, v); }, \
              [](const RunConfig& c) { return std::string(c.field ? "true" : "false"); }}
#define BHD_ENUM(field, table, help)                                                                \
    ConfigKey{#field, help, [](RunConfig& c, const std::string& v) { c.field = table.parse(#field, v); }, \
              [](const RunConfig& c) { return table.name(c.field); }}

} // namespace detail

// Every configurable key in a fixed order.
inline const std::vector<detail::ConfigKey>& config_keys() {
    using namespace detail;
    static const std::vector<ConfigKey> keys{
        BHD_DOUBLE(J, "hopping J"),
        BHD_DOUBLE(U, "on-site interaction U"),
        BHD_DOUBLE(Omega, "drive Rabi frequency on site 1"),
        BHD_DOUBLE(gamma, "loss rate on site 2"),
        BHD_DOUBLE(detuning_in, "sweep start detuning"),
        BHD_DOUBLE(detuning_f, "sweep end detuning"),
        BHD_DOUBLE(sweep_rate, "tunneling periods per unit detuning"),
        BHD_DOUBLE(detuning_sign, "sign of the detuning term in H (-1 or +1)"),
        BHD_INT(n_max, "Fock truncation on n1 + n2"),
        BHD_DOUBLE(dwell_periods, "periods at detuning_f with the drive on before switch-off"),
        BHD_DOUBLE(jo_periods, "periods evolved after switch-off"),
        BHD_BOOL(hold_at_final, "hold detuning_f after switch-off (else detuning_hold)"),
        BHD_DOUBLE(detuning_hold, "detuning after switch-off when hold_at_final = false"),
        BHD_INT(project_sector, "JO from the normalized N-block of the state (-1: off)"),
        BHD_DOUBLE(dt_divisor, "dt_max = T / dt_divisor"),
        BHD_DOUBLE(sweep_samples_per_period, "sweep sampling cadence"),
        BHD_DOUBLE(jo_samples_per_period, "JO sampling cadence"),
        BHD_DOUBLE(leakage_threshold, "population allowed in the top shells"),
        BHD_INT(leakage_shells, "number of top shells counted as leakage"),
        BHD_ENUM(leakage_action, kLeakageNames, "warn | abort"),
        BHD_BOOL(monitor_positivity, "track the minimum eigenvalue at every sample"),
        BHD_DOUBLE(trace_abort, "abort when |tr R - 1| exceeds this"),
        BHD_ENUM(reconstruction, kEvolutionNames, "frozen | shifted | exact"),
        BHD_ENUM(frequency_model, kFrequencyNames, "josephson | bogoliubov"),
        BHD_DOUBLE(fit_window_periods, "fit window in periods (0: automatic)"),
        BHD_BOOL(fit_offset, "fit a constant offset with the envelope"),
        BHD_DOUBLE(correlation_periods, "periods used for the overlay cross-correlation"),
        ConfigKey{"output_dir", "output directory",
                  [](RunConfig& c, const std::string& v) { c.output_dir = v; },
                  [](const RunConfig& c) { return c.output_dir; }},
        BHD_BOOL(svg, "write SVG plots"),
        BHD_ENUM(state_format, kStateFormatNames, "binary | text"),
    };
    return keys;
}

#undef BHD_DOUBLE
#undef BHD_INT
#undef BHD_BOOL
#undef BHD_ENUM

inline void set_config_value(RunConfig& c, const std::string& key, const std::string& value) {
    for (const auto& k : config_keys()) {
        if (key == k.name) {
            k.set(c, detail::trim(value));
            return;
        }
    }
    throw ConfigError("unknown config key '" + key + "'");
}

inline std::map<std::string, std::string> config_values(const RunConfig& c) {
    std::map<std::string, std::string> out;
    for (const auto& k : config_keys()) out[k.name] = k.get(c);
    return out;
}

inline void validate_config(const RunConfig& c) {
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    need(c.J > 0.0, "J must be > 0");
    need(c.U >= 0.0, "U must be >= 0");
    need(c.gamma >= 0.0, "gamma must be >= 0");
    need(c.detuning_in < c.detuning_f, "detuning_in must be below detuning_f");
    need(c.sweep_rate > 0.0 && std::isfinite(c.sweep_rate), "sweep_rate must be positive");
    need(c.detuning_sign == 1.0 || c.detuning_sign == -1.0, "detuning_sign must be +1 or -1");
    need(c.n_max >= 1 && c.n_max <= 200, "n_max must lie in 1..200");
    need(c.dwell_periods >= 0.0, "dwell_periods must be >= 0");
    need(c.jo_periods > 0.0, "jo_periods must be > 0");
    need(c.project_sector <= c.n_max, "project_sector exceeds n_max");
    need(c.dt_divisor > 0.0, "dt_divisor must be > 0");
    need(c.sweep_samples_per_period > 0.0, "sweep_samples_per_period must be > 0");
    need(c.jo_samples_per_period > 0.0, "jo_samples_per_period must be > 0");
    need(c.leakage_threshold >= 0.0, "leakage_threshold must be >= 0");
    need(c.leakage_shells >= 1, "leakage_shells must be >= 1");
    need(c.trace_abort > 0.0, "trace_abort must be > 0");
    need(c.fit_window_periods >= 0.0, "fit_window_periods must be >= 0");
    need(c.correlation_periods > 0.0, "correlation_periods must be > 0");
    need(!c.output_dir.empty(), "output_dir must not be empty");
}

// `key = value` lines; '#' starts a comment.
inline void apply_config_text(RunConfig& c, std::istream& in, const std::string& origin) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        }
        try {
            set_config_value(c, detail::trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

inline nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : config_values(c)) j[k] = v;
    return j;
}

inline void apply_config_json(RunConfig& c, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config JSON must be an object");
    for (const auto& [k, v] : j.items()) {
        if (v.is_string()) set_config_value(c, k, v.get<std::string>());
        else if (v.is_boolean()) set_config_value(c, k, v.get<bool>() ? "true" : "false");
        else if (v.is_number_integer()) set_config_value(c, k, std::to_string(v.get<long>()));
        else if (v.is_number()) set_config_value(c, k, detail::fmt_double(v.get<double>()));
        else throw ConfigError("config key '" + k + "' has an unsupported JSON type");
    }
}

// Reads a key = value file, or a run manifest (JSON with a "config" object).
inline RunConfig load_config(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(path + ": " + e.what());
        }
        apply_config_json(base, j.contains("config") ? j.at("config") : j);
    } else {
        std::istringstream body(text);
        apply_config_text(base, body, path);
    }
    return base;
}

inline std::string config_text(const RunConfig& c) {
    std::string out;
    for (const auto& k : config_keys()) out += std::string(k.name) + " = " + k.get(c) + "\n";
    return out;
}

} // namespace bhdimer
