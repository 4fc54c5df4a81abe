#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "cuav/planner.hpp"
#include "cuav/types.hpp"
#include "cuav/units.hpp"

namespace cuav {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Mode { planar, vertical };

struct SweepSpec {
    std::string variable;
    double from;
    double to;
    int steps;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
    std::string path;
    OutputFormat format = OutputFormat::csv;
};

/// One fully-specified run. Powers and angles are stored in linear watts
/// and radians; the JSON layer accepts dBm and degrees and converts on
/// load.
struct RunConfig {
    Mode mode = Mode::planar;
    EnvModel env{};
    RadioParams radio{};
    GeometryConstraints geom{};  ///< vertical mode: d_min/d_max are h bounds
    std::optional<SweepSpec> sweep;
    std::optional<OutputSpec> output;
    SearchParams search{};
};

namespace detail {

inline double require_number(const nlohmann::json& j, const std::string& scope,
                             const std::string& key) {
    if (!j.contains(key))
        throw config_error(scope + "." + key + " is missing");
    if (!j.at(key).is_number())
        throw config_error(scope + "." + key + " must be a number");
    return j.at(key).get<double>();
}

inline double number_or(const nlohmann::json& j, const std::string& key, double dflt) {
    if (!j.contains(key)) return dflt;
    return j.at(key).get<double>();
}

} // namespace detail

/// Parses and validates a configuration document. Errors name the
/// offending field.
inline RunConfig parse_config(const nlohmann::json& j) {
    RunConfig cfg;
    const std::string mode = j.value("mode", std::string("planar"));
    if (mode == "planar")
        cfg.mode = Mode::planar;
    else if (mode == "vertical")
        cfg.mode = Mode::vertical;
    else
        throw config_error("mode must be \"planar\" or \"vertical\"");

    if (!j.contains("env")) throw config_error("env section is missing");
    const auto& je = j.at("env");
    cfg.env.a = detail::require_number(je, "env", "a");
    cfg.env.b = detail::require_number(je, "env", "b");
    cfg.env.xi_los = detail::require_number(je, "env", "xi_los");
    cfg.env.xi_nlos = detail::require_number(je, "env", "xi_nlos");

    if (!j.contains("radio")) throw config_error("radio section is missing");
    const auto& jr = j.at("radio");
    cfg.radio.sigma2_b = dbm_to_watt(detail::require_number(jr, "radio", "sigma2_b_dbm"));
    cfg.radio.sigma2_w = dbm_to_watt(detail::require_number(jr, "radio", "sigma2_w_dbm"));
    cfg.radio.p_max = dbm_to_watt(detail::require_number(jr, "radio", "p_max_dbm"));
    cfg.radio.n = static_cast<long>(detail::require_number(jr, "radio", "blocklength"));
    cfg.radio.epsilon = detail::require_number(jr, "radio", "epsilon");

    if (!j.contains("geometry")) throw config_error("geometry section is missing");
    const auto& jg = j.at("geometry");
    cfg.geom.L = detail::require_number(jg, "geometry", "L_m");
    if (cfg.mode == Mode::vertical) {
        cfg.geom.d_min = detail::require_number(jg, "geometry", "h_min_m");
        cfg.geom.d_max = detail::require_number(jg, "geometry", "h_max_m");
        cfg.geom.theta_min = kPi / 2.0;
        if (!(cfg.geom.d_min < cfg.geom.d_max))
            throw config_error("geometry.h_min_m must be < geometry.h_max_m");
    } else {
        cfg.geom.d_min = detail::require_number(jg, "geometry", "d_min_m");
        cfg.geom.d_max = detail::require_number(jg, "geometry", "d_max_m");
        cfg.geom.theta_min = deg2rad(detail::require_number(jg, "geometry", "theta_min_deg"));
        if (!(cfg.geom.d_min < cfg.geom.d_max))
            throw config_error("geometry.d_min_m must be < geometry.d_max_m");
    }

    try {
        validate(cfg.env);
        validate(cfg.radio);
        validate(cfg.geom);
    } catch (const invalid_parameter& e) {
        throw config_error(e.what());
    }

    if (j.contains("sweep")) {
        const auto& js = j.at("sweep");
        SweepSpec sw;
        if (!js.contains("variable")) throw config_error("sweep.variable is missing");
        sw.variable = js.at("variable").get<std::string>();
        sw.from = detail::require_number(js, "sweep", "from");
        sw.to = detail::require_number(js, "sweep", "to");
        sw.steps = static_cast<int>(detail::require_number(js, "sweep", "steps"));
        if (sw.steps < 1) throw config_error("sweep.steps must be >= 1");
        cfg.sweep = sw;
    }

    if (j.contains("output")) {
        const auto& jo = j.at("output");
        OutputSpec out;
        out.path = jo.value("path", std::string());
        const std::string fmt = jo.value("format", std::string("csv"));
        if (fmt == "csv")
            out.format = OutputFormat::csv;
        else if (fmt == "json")
            out.format = OutputFormat::json;
        else
            throw config_error("output.format must be \"csv\" or \"json\"");
        cfg.output = out;
    }

    if (j.contains("search")) {
        const auto& js = j.at("search");
        cfg.search.grid_d = static_cast<int>(detail::number_or(js, "grid_d", cfg.search.grid_d));
        cfg.search.grid_theta =
            static_cast<int>(detail::number_or(js, "grid_theta", cfg.search.grid_theta));
        cfg.search.refine_iters =
            static_cast<int>(detail::number_or(js, "refine_iters", cfg.search.refine_iters));
        cfg.search.scan_points =
            static_cast<int>(detail::number_or(js, "scan_points", cfg.search.scan_points));
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

/// Named parameter presets matching the shipped evaluation sweeps. Every
/// preset is a complete config document; load with parse_config.
inline const std::map<std::string, nlohmann::json>& presets() {
    // The location_vs_L caption quotes powers in plain dB; they are read
    // as dBm here, which only shifts the absolute SNR scale and none of
    // the placement behaviour.
    static const std::map<std::string, nlohmann::json> table = {
        {"location_vs_L",
         {{"mode", "planar"},
          {"env", {{"a", 4.88}, {"b", 0.429}, {"xi_los", -2.0}, {"xi_nlos", -3.0}}},
          {"radio",
           {{"sigma2_b_dbm", -90.0},
            {"sigma2_w_dbm", -60.0},
            {"p_max_dbm", 20.0},
            {"blocklength", 200},
            {"epsilon", 0.01}}},
          {"geometry",
           {{"L_m", 10000.0}, {"d_min_m", 1000.0}, {"d_max_m", 3000.0}, {"theta_min_deg", 30.0}}},
          {"sweep", {{"variable", "L_m"}, {"from", 10000.0}, {"to", 500.0}, {"steps", 20}}}}},
        {"snr_vs_eps",
         {{"mode", "planar"},
          {"env", {{"a", 4.88}, {"b", 0.429}, {"xi_los", -2.0}, {"xi_nlos", -3.0}}},
          {"radio",
           {{"sigma2_b_dbm", -90.0},
            {"sigma2_w_dbm", -60.0},
            {"p_max_dbm", 10.0},
            {"blocklength", 200},
            {"epsilon", 0.1}}},
          {"geometry",
           {{"L_m", 10000.0}, {"d_min_m", 1000.0}, {"d_max_m", 3000.0}, {"theta_min_deg", 22.5}}},
          {"sweep", {{"variable", "epsilon"}, {"from", 0.05}, {"to", 0.5}, {"steps", 19}}}}},
        {"snr_vs_eps_dmax2500",
         {{"mode", "planar"},
          {"env", {{"a", 4.88}, {"b", 0.429}, {"xi_los", -2.0}, {"xi_nlos", -3.0}}},
          {"radio",
           {{"sigma2_b_dbm", -90.0},
            {"sigma2_w_dbm", -60.0},
            {"p_max_dbm", 10.0},
            {"blocklength", 200},
            {"epsilon", 0.1}}},
          {"geometry",
           {{"L_m", 10000.0}, {"d_min_m", 1000.0}, {"d_max_m", 2500.0}, {"theta_min_deg", 22.5}}},
          {"sweep", {{"variable", "epsilon"}, {"from", 0.05}, {"to", 0.5}, {"steps", 19}}}}},
        {"snr_vs_eps_dmax3500",
         {{"mode", "planar"},
          {"env", {{"a", 4.88}, {"b", 0.429}, {"xi_los", -2.0}, {"xi_nlos", -3.0}}},
          {"radio",
           {{"sigma2_b_dbm", -90.0},
            {"sigma2_w_dbm", -60.0},
            {"p_max_dbm", 10.0},
            {"blocklength", 200},
            {"epsilon", 0.1}}},
          {"geometry",
           {{"L_m", 10000.0}, {"d_min_m", 1000.0}, {"d_max_m", 3500.0}, {"theta_min_deg", 22.5}}},
          {"sweep", {{"variable", "epsilon"}, {"from", 0.05}, {"to", 0.5}, {"steps", 19}}}}},
        {"snr_vs_theta_min_L10",
         {{"mode", "planar"},
          {"env", {{"a", 4.88}, {"b", 0.429}, {"xi_los", -2.0}, {"xi_nlos", -3.0}}},
          {"radio",
           {{"sigma2_b_dbm", -90.0},
            {"sigma2_w_dbm", -60.0},
            {"p_max_dbm", 10.0},
            {"blocklength", 200},
            {"epsilon", 0.1}}},
          {"geometry",
           {{"L_m", 10000.0}, {"d_min_m", 1000.0}, {"d_max_m", 3000.0}, {"theta_min_deg", 18.0}}},
          {"sweep", {{"variable", "theta_min_deg"}, {"from", 18.0}, {"to", 90.0}, {"steps", 16}}}}},
        {"snr_vs_theta_min_L15",
         {{"mode", "planar"},
          {"env", {{"a", 4.88}, {"b", 0.429}, {"xi_los", -2.0}, {"xi_nlos", -3.0}}},
          {"radio",
           {{"sigma2_b_dbm", -90.0},
            {"sigma2_w_dbm", -60.0},
            {"p_max_dbm", 10.0},
            {"blocklength", 200},
            {"epsilon", 0.1}}},
          {"geometry",
           {{"L_m", 15000.0}, {"d_min_m", 1000.0}, {"d_max_m", 3000.0}, {"theta_min_deg", 18.0}}},
          {"sweep", {{"variable", "theta_min_deg"}, {"from", 18.0}, {"to", 90.0}, {"steps", 16}}}}},
        // The height preset's source quotes one path-gain exponent
        // (-3) and no height cap; both exponents carry the quoted value
        // and the cap defaults to 400 m so every solution branch shows
        // up across the sweep.
        {"height_vs_eps",
         {{"mode", "vertical"},
          {"env", {{"a", 4.88}, {"b", 0.429}, {"xi_los", -3.0}, {"xi_nlos", -3.0}}},
          {"radio",
           {{"sigma2_b_dbm", -90.0},
            {"sigma2_w_dbm", -40.0},
            {"p_max_dbm", 10.0},
            {"blocklength", 200},
            {"epsilon", 0.02}}},
          {"geometry", {{"L_m", 1000.0}, {"h_min_m", 100.0}, {"h_max_m", 400.0}}},
          {"sweep", {{"variable", "epsilon"}, {"from", 0.005}, {"to", 0.1}, {"steps", 19}}}}},
    };
    return table;
}

inline RunConfig load_preset(const std::string& name) {
    const auto& table = presets();
    const auto it = table.find(name);
    if (it == table.end()) {
        std::string known;
        for (const auto& [k, v] : table) {
            if (!known.empty()) known += ", ";
            known += k;
        }
        throw config_error("unknown preset \"" + name + "\" (known: " + known + ")");
    }
    return parse_config(it->second);
}

/// Fixed-format floating-point rendering used for all CSV output, so
/// identical runs produce byte-identical files.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string binding_list(const std::set<Binding>& bs) {
    std::string out;
    for (const Binding b : bs) {
        if (!out.empty()) out += "+";
        out += to_string(b);
    }
    return out.empty() ? "none" : out;
}

/// Human units for reporting: range in metres, angle in degrees, power
/// in dBm, SNR in dB.
inline nlohmann::json solution_to_json(const PlanSolution& sol) {
    return {{"d_w_m", sol.placement.d_w},
            {"theta_w_deg", rad2deg(sol.placement.theta_w)},
            {"power_dbm", watt_to_dbm(sol.power)},
            {"gamma_b_db", linear_to_db(sol.snr)},
            {"d01_nats", sol.d01},
            {"scenario", to_string(sol.scenario)},
            {"case", sol.case_label},
            {"binding", binding_list(sol.binding_constraints)}};
}

} // namespace cuav
