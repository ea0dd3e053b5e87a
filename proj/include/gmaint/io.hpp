#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gmaint/equivalent.hpp"
#include "gmaint/orders.hpp"
#include "gmaint/policy.hpp"
#include "gmaint/repair.hpp"

namespace gmaint {

inline constexpr int kSchemaVersion = 1;

// Fixed "%.17g" rendering so output files are byte-stable across runs.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

// CSV columns: time, level, virtual_age, is_repair_epoch. Repair epochs appear
// twice, pre-repair row first, post-repair row flagged.
inline std::string trajectory_csv(const MaintainedTrajectory& traj, const std::string& config_echo) {
    std::string s;
    s += "# schema_version: " + std::to_string(kSchemaVersion) + "\n";
    if (!config_echo.empty()) s += "# config: " + config_echo + "\n";
    s += "time,level,virtual_age,is_repair_epoch\n";
    std::size_t next_repair = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const bool is_repair =
            next_repair < traj.repair_epochs.size() && traj.repair_epochs[next_repair] == i;
        if (is_repair) ++next_repair;
        s += format_double(traj.times[i]) + "," + format_double(traj.levels[i]) + "," +
             format_double(traj.virtual_ages[i]) + "," + (is_repair ? "1" : "0") + "\n";
    }
    return s;
}

inline nlohmann::json verdict_to_json(const OrderVerdict& v) {
    return nlohmann::json{{"order", to_string(v.order)},
                          {"relation", to_string(v.relation)},
                          {"crossings", v.crossings},
                          {"grid", v.grid},
                          {"values", v.values}};
}

inline nlohmann::json dominance_to_json(const DominanceResult& d) {
    return nlohmann::json{{"direction", to_string(d.direction)},
                          {"witnesses_forward", d.witnesses_forward},
                          {"witnesses_reverse", d.witnesses_reverse}};
}

inline nlohmann::json crossing_report_to_json(const CrossingReport& r) {
    nlohmann::json intervals = nlohmann::json::array();
    for (const auto& [n, sw] : r.interval_classification) {
        nlohmann::json e{{"n", n}};
        if (sw)
            e["switch_at"] = *sw;
        else
            e["switch_at"] = nullptr;
        intervals.push_back(e);
    }
    nlohmann::json j{{"beta", r.beta},
                     {"rho2", r.rho2},
                     {"period_T", r.period_T},
                     {"g_at_two", r.g_at_two},
                     {"n_star", r.n_star},
                     {"intervals", intervals}};
    j["x_star"] = r.x_star ? nlohmann::json(*r.x_star) : nlohmann::json(nullptr);
    j["t_star"] = r.t_star ? nlohmann::json(*r.t_star) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json policy_result_to_json(const PolicyResult& r, const std::string& axis1_name) {
    return nlohmann::json{{axis1_name, r.axis1},
                          {"T", r.axis2},
                          {"rates", r.rates},
                          {"std_errors", r.std_errors},
                          {"argmax", {{axis1_name, r.axis1[r.argmax_i]},
                                      {"T", r.axis2[r.argmax_j]},
                                      {"rate", r.rates[r.argmax_i][r.argmax_j]},
                                      {"std_error", r.std_errors[r.argmax_i][r.argmax_j]}}},
                          {"n_replications", r.n_replications},
                          {"seed", r.seed}};
}

// CSV columns: axis1, axis2, rate, std_error (one row per grid cell).
inline std::string surface_csv(const PolicyResult& r, const std::string& axis1_name,
                               const std::string& config_echo) {
    std::string s;
    s += "# schema_version: " + std::to_string(kSchemaVersion) + "\n";
    if (!config_echo.empty()) s += "# config: " + config_echo + "\n";
    s += axis1_name + ",T,rate,std_error\n";
    for (std::size_t i = 0; i < r.axis1.size(); ++i)
        for (std::size_t j = 0; j < r.axis2.size(); ++j)
            s += format_double(r.axis1[i]) + "," + format_double(r.axis2[j]) + "," +
                 format_double(r.rates[i][j]) + "," + format_double(r.std_errors[i][j]) + "\n";
    return s;
}

}  // namespace gmaint
