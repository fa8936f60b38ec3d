#pragma once

// Run configuration: every default is the operating value the pipeline is
// built around (Z floor +15 dBZ, |V| <= 6 m/s, 2 km ceiling, 5-gate minimum,
// 7 h alert lead time). Loaded from a small TOML-style file; unknown keys are
// rejected so typos cannot silently fall back to defaults.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "locustradar/crosscheck.hpp"
#include "locustradar/echo_filter.hpp"
#include "locustradar/errors.hpp"
#include "locustradar/swarm_tracker.hpp"

namespace locust {

struct RunConfig {
    FilterConfig filter;
    TrackerConfig tracker;
    CrossCheckConfig crosscheck;
    double alert_lead_time_h = 7.0;

    void validate() const {
        filter.validate();
        tracker.validate();
        if (alert_lead_time_h <= 0.0) throw ConfigError("alert.lead_time_threshold_h must be positive");
    }

    nlohmann::json to_json() const {
        return {{"filter",
                 {{"z_min_dbz", filter.z_min_dbz},
                  {"v_max_abs_ms", filter.v_max_abs_ms},
                  {"height_ceiling_km", filter.height_ceiling_km},
                  {"min_cluster_gates", filter.min_cluster_gates},
                  {"use_spectrum_width", filter.use_spectrum_width},
                  {"w_max_ms", filter.w_max_ms ? nlohmann::json(*filter.w_max_ms) : nlohmann::json(nullptr)},
                  {"connectivity", filter.connectivity == Connectivity::FOUR ? "FOUR" : "EIGHT"}}},
                {"tracker",
                 {{"max_association_speed_ms", tracker.max_association_speed_ms},
                  {"max_missed_scans", tracker.max_missed_scans},
                  {"min_track_observations", tracker.min_track_observations}}},
                {"crosscheck",
                 {{"station_radius_km", crosscheck.station_radius_km},
                  {"downwind_max_deg", crosscheck.downwind_max_deg},
                  {"upwind_min_deg", crosscheck.upwind_min_deg}}},
                {"alert", {{"lead_time_threshold_h", alert_lead_time_h}}}};
    }
};

namespace cfg_detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double to_number(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + v);
    }
}

inline bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("bad boolean value for '" + key + "': " + v);
}

inline std::string unquote(const std::string& v, const std::string& key) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    throw ConfigError("expected quoted string for '" + key + "': " + v);
}

} // namespace cfg_detail

inline void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    using namespace cfg_detail;
    if (key == "filter.z_min_dbz") cfg.filter.z_min_dbz = to_number(value, key);
    else if (key == "filter.v_max_abs_ms") cfg.filter.v_max_abs_ms = to_number(value, key);
    else if (key == "filter.height_ceiling_km") cfg.filter.height_ceiling_km = to_number(value, key);
    else if (key == "filter.min_cluster_gates") cfg.filter.min_cluster_gates = static_cast<std::size_t>(to_number(value, key));
    else if (key == "filter.use_spectrum_width") cfg.filter.use_spectrum_width = to_bool(value, key);
    else if (key == "filter.w_max_ms") cfg.filter.w_max_ms = to_number(value, key);
    else if (key == "filter.connectivity") {
        const std::string c = unquote(value, key);
        if (c == "FOUR") cfg.filter.connectivity = Connectivity::FOUR;
        else if (c == "EIGHT") cfg.filter.connectivity = Connectivity::EIGHT;
        else throw ConfigError("connectivity must be FOUR or EIGHT, got " + c);
    } else if (key == "tracker.max_association_speed_ms") cfg.tracker.max_association_speed_ms = to_number(value, key);
    else if (key == "tracker.max_missed_scans") cfg.tracker.max_missed_scans = static_cast<std::size_t>(to_number(value, key));
    else if (key == "tracker.min_track_observations") cfg.tracker.min_track_observations = static_cast<std::size_t>(to_number(value, key));
    else if (key == "crosscheck.station_radius_km") cfg.crosscheck.station_radius_km = to_number(value, key);
    else if (key == "crosscheck.downwind_max_deg") cfg.crosscheck.downwind_max_deg = to_number(value, key);
    else if (key == "crosscheck.upwind_min_deg") cfg.crosscheck.upwind_min_deg = to_number(value, key);
    else if (key == "alert.lead_time_threshold_h") cfg.alert_lead_time_h = to_number(value, key);
    else throw ConfigError("unknown config key '" + key + "'");
}

inline RunConfig parse_run_config(std::istream& in) {
    RunConfig cfg;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments outside quotes
        bool in_quote = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quote = !in_quote;
            if (line[i] == '#' && !in_quote) {
                line.resize(i);
                break;
            }
        }
        line = cfg_detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header at line " + std::to_string(lineno));
            section = cfg_detail::trim(line.substr(1, line.size() - 2));
            if (section != "filter" && section != "tracker" && section != "crosscheck" && section != "alert")
                throw ConfigError("unknown config section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value at line " + std::to_string(lineno));
        const std::string key = cfg_detail::trim(line.substr(0, eq));
        const std::string value = cfg_detail::trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError("key '" + key + "' outside any section");
        apply_config_key(cfg, section + "." + key, value);
    }
    cfg.validate();
    return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    return parse_run_config(in);
}

} // namespace locust
