// Command-line front end: simulate maintained-degradation trajectories, compare
// the two repair models, analyze the equivalent case, and optimize the (n,T)
// and (M,T) maintenance policies. Runs are driven by a JSON config (presets
// provide ready-made ones); every output embeds the resolved config and seed so
// a run can be reproduced byte for byte.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gmaint/gmaint.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
using namespace gmaint;

namespace {

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

// ---------------------------------------------------------------- config utils

void check_keys(const json& obj, const std::vector<std::string>& allowed, const std::string& ctx) {
    if (!obj.is_object()) throw config_error(ctx + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const auto& a : allowed)
            if (key == a) ok = true;
        if (!ok) throw config_error(ctx + ": unknown key \"" + key + "\"");
    }
}

const json& need(const json& obj, const char* key, const std::string& ctx) {
    if (!obj.contains(key)) throw config_error(ctx + ": missing key \"" + key + "\"");
    return obj.at(key);
}

double need_num(const json& obj, const char* key, const std::string& ctx) {
    const json& v = need(obj, key, ctx);
    if (!v.is_number()) throw config_error(ctx + ": \"" + std::string(key) + "\" must be a number");
    return v.get<double>();
}

double num_or(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    return obj.at(key).get<double>();
}

std::string need_str(const json& obj, const char* key, const std::string& ctx) {
    const json& v = need(obj, key, ctx);
    if (!v.is_string()) throw config_error(ctx + ": \"" + std::string(key) + "\" must be a string");
    return v.get<std::string>();
}

// ------------------------------------------------------------- domain parsing

ShapeFunction parse_shape(const json& j, const std::string& ctx) {
    const std::string kind = need_str(j, "kind", ctx);
    if (kind == "power_law") {
        check_keys(j, {"kind", "alpha", "beta"}, ctx);
        return ShapeFunction::power_law(need_num(j, "alpha", ctx), need_num(j, "beta", ctx));
    }
    if (kind == "linear") {
        check_keys(j, {"kind", "a"}, ctx);
        return ShapeFunction::linear(need_num(j, "a", ctx));
    }
    if (kind == "exp_growth") {
        check_keys(j, {"kind"}, ctx);
        return ShapeFunction::exp_growth();
    }
    if (kind == "exp_saturating") {
        check_keys(j, {"kind"}, ctx);
        return ShapeFunction::exp_saturating();
    }
    if (kind == "sum") {
        check_keys(j, {"kind", "terms"}, ctx);
        const json& terms = need(j, "terms", ctx);
        if (!terms.is_array() || terms.empty())
            throw config_error(ctx + ": \"terms\" must be a non-empty array");
        std::vector<ShapeFunction> parts;
        for (const auto& t : terms) parts.push_back(parse_shape(t, ctx + ".terms"));
        return ShapeFunction::sum(std::move(parts));
    }
    throw config_error(ctx + ": unknown shape kind \"" + kind + "\"");
}

RepairKind parse_repair_kind(const json& j, const char* key, const std::string& ctx) {
    const std::string s = need_str(j, key, ctx);
    if (s == "ARD1") return RepairKind::ARD1;
    if (s == "ARA1") return RepairKind::ARA1;
    throw config_error(ctx + ": repair must be \"ARD1\" or \"ARA1\"");
}

RepairProcessSpec parse_process(const json& j, const std::string& ctx) {
    check_keys(j, {"shape", "rate_b", "repair", "rho", "period_T"}, ctx);
    return RepairProcessSpec(parse_shape(need(j, "shape", ctx), ctx + ".shape"),
                             need_num(j, "rate_b", ctx), parse_repair_kind(j, "repair", ctx),
                             need_num(j, "rho", ctx), need_num(j, "period_T", ctx));
}

ComparisonScenario parse_scenario(const json& j, const std::string& ctx) {
    check_keys(j, {"shape", "rate_b", "period_T", "rho_ard", "rho_ara"}, ctx);
    ComparisonScenario s{parse_shape(need(j, "shape", ctx), ctx + ".shape"),
                         need_num(j, "rate_b", ctx), need_num(j, "period_T", ctx),
                         need_num(j, "rho_ard", ctx), need_num(j, "rho_ara", ctx)};
    (void)s.ard_spec();  // validate parameter ranges early
    (void)s.ara_spec();
    return s;
}

RewardSpec parse_reward(const json& j, const std::string& ctx) {
    check_keys(j, {"alpha1", "alpha2", "k1", "k2", "b1", "c"}, ctx);
    return RewardSpec(need_num(j, "alpha1", ctx), need_num(j, "alpha2", ctx),
                      need_num(j, "k1", ctx), need_num(j, "k2", ctx), need_num(j, "b1", ctx),
                      need_num(j, "c", ctx));
}

std::vector<double> parse_grid(const json& j, const std::string& ctx) {
    if (j.is_array()) {
        std::vector<double> v = j.get<std::vector<double>>();
        if (v.empty()) throw config_error(ctx + ": grid array must be non-empty");
        return v;
    }
    check_keys(j, {"from", "to", "count"}, ctx);
    const double from = need_num(j, "from", ctx), to = need_num(j, "to", ctx);
    const double count = need_num(j, "count", ctx);
    if (count < 1 || count != std::floor(count))
        throw config_error(ctx + ": \"count\" must be a positive integer");
    return linspace(from, to, static_cast<std::size_t>(count));
}

// ----------------------------------------------------------------- output utils

void write_file(const fs::path& dir, const std::string& name, const std::string& content) {
    fs::create_directories(dir);
    write_text_file((dir / name).string(), content);
    std::cout << "wrote " << (dir / name).string() << "\n";
}

std::string config_echo(const json& cfg) { return cfg.dump(); }

json output_header(const std::string& command, const json& cfg) {
    return json{{"schema_version", kSchemaVersion}, {"command", command}, {"config", cfg}};
}

// ------------------------------------------------------------------- commands

int cmd_simulate(const json& cfg, const fs::path& out_dir, std::uint64_t seed, unsigned) {
    check_keys(cfg, {"command", "process", "horizon", "dt", "seed"}, "simulate");
    const auto spec = parse_process(need(cfg, "process", "simulate"), "simulate.process");
    const double horizon = need_num(cfg, "horizon", "simulate");
    const double dt = need_num(cfg, "dt", "simulate");

    json echo = cfg;
    echo["seed"] = seed;
    RngStream rng(seed, stream_key(0x51u));
    MaintainedTrajectory traj;
    try {
        simulate_into(spec, horizon, dt, rng, traj);
    } catch (const std::domain_error& e) {
        throw config_error(std::string("simulate: ") + e.what());
    }
    write_file(out_dir, "trajectory.csv", trajectory_csv(traj, config_echo(echo)));

    json summary = output_header("simulate", echo);
    summary["summary"] = {{"points", traj.times.size()},
                          {"repairs", traj.repair_epochs.size()},
                          {"final_time", traj.times.back()},
                          {"final_level", traj.levels.back()}};
    write_file(out_dir, "simulate.json", summary.dump(2) + "\n");
    std::cout << "simulated " << traj.times.size() << " points, " << traj.repair_epochs.size()
              << " repairs, final level " << format_double(traj.levels.back()) << "\n";
    return kExitOk;
}

int cmd_compare(const json& cfg, const fs::path& out_dir, std::uint64_t seed, unsigned threads) {
    check_keys(cfg,
               {"command", "scenario", "t", "x_points", "moment_t_max", "moment_points",
                "lc", "conditionals", "seed"},
               "compare");
    json echo = cfg;
    echo["seed"] = seed;
    json out = output_header("compare", echo);

    const bool has_scenario = cfg.contains("scenario");
    if (!has_scenario && !cfg.contains("conditionals"))
        throw config_error("compare: needs \"scenario\" and/or \"conditionals\"");

    if (has_scenario) {
        const auto scenario = parse_scenario(cfg.at("scenario"), "compare.scenario");
        const double t = need_num(cfg, "t", "compare");
        const std::size_t x_points = static_cast<std::size_t>(num_or(cfg, "x_points", 400));

        const auto y = marginal(scenario.ard_spec(), t);
        const auto z = marginal(scenario.ara_spec(), t);
        const auto grid = make_order_grid(y, z, x_points);
        const auto icx = icx_curve(y, z, grid);
        const auto icv = icv_curve(y, z, grid);
        out["verdicts"] = {{"icx", verdict_to_json(icx)},
                           {"icv", verdict_to_json(icv)},
                           {"mean_dominance", dominance_to_json(mean_dominance(scenario))},
                           {"variance_dominance", dominance_to_json(variance_dominance(scenario))}};
        json thm = json::array();
        for (const auto& v : theorem_icx_icv(scenario, t)) thm.push_back(verdict_to_json(v));
        out["verdicts"]["hypothesis_driven"] = thm;

        // difference curves (icx/icv criteria) for plotting
        std::string curves;
        curves += "# schema_version: " + std::to_string(kSchemaVersion) + "\n";
        curves += "# config: " + config_echo(echo) + "\n";
        curves += "x,icx_diff,icv_diff\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            curves += format_double(grid[i]) + "," + format_double(icx.values[i]) + "," +
                      format_double(icv.values[i]) + "\n";
        write_file(out_dir, "compare_curves.csv", curves);

        // moment curves over [0, moment_t_max]
        const double t_max = num_or(cfg, "moment_t_max", 5.0 * scenario.period_T);
        const std::size_t n_pts = static_cast<std::size_t>(num_or(cfg, "moment_points", 400));
        std::string moments;
        moments += "# schema_version: " + std::to_string(kSchemaVersion) + "\n";
        moments += "# config: " + config_echo(echo) + "\n";
        moments += "t,mean_ard,var_ard,mean_ara,var_ara\n";
        const auto ard = scenario.ard_spec();
        const auto ara = scenario.ara_spec();
        for (std::size_t i = 0; i <= n_pts; ++i) {
            const double s = t_max * static_cast<double>(i) / static_cast<double>(n_pts);
            moments += format_double(s) + "," + format_double(mean_at(ard, s)) + "," +
                       format_double(variance_at(ard, s)) + "," + format_double(mean_at(ara, s)) +
                       "," + format_double(variance_at(ara, s)) + "\n";
        }
        write_file(out_dir, "compare_moments.csv", moments);

        if (cfg.contains("lc")) {
            const json& lc = cfg.at("lc");
            check_keys(lc, {"n", "t", "x_from", "x_to", "x_points"}, "compare.lc");
            const long n = static_cast<long>(need_num(lc, "n", "compare.lc"));
            const double t_lc = need_num(lc, "t", "compare.lc");
            const double x_from = need_num(lc, "x_from", "compare.lc");
            const double x_to = need_num(lc, "x_to", "compare.lc");
            const std::size_t np = static_cast<std::size_t>(num_or(lc, "x_points", 300));
            std::vector<double> lc_grid(np);
            for (std::size_t i = 0; i < np; ++i)
                lc_grid[i] = x_from + (x_to - x_from) * static_cast<double>(i) /
                                          static_cast<double>(np - 1);
            const auto v = lc_full_compare(scenario, n, t_lc, lc_grid);
            out["verdicts"]["lc"] = verdict_to_json(v);
            std::string lc_csv;
            lc_csv += "# schema_version: " + std::to_string(kSchemaVersion) + "\n";
            lc_csv += "# config: " + config_echo(echo) + "\n";
            lc_csv += "x,log_density_ratio\n";
            for (std::size_t i = 0; i < v.grid.size(); ++i)
                lc_csv += format_double(v.grid[i]) + "," + format_double(v.values[i]) + "\n";
            write_file(out_dir, "compare_lc.csv", lc_csv);
        }
        std::cout << "icx: " << to_string(icx.relation) << " (" << icx.crossings.size()
                  << " crossings), icv: " << to_string(icv.relation) << " ("
                  << icv.crossings.size() << " crossings)\n";
    }

    if (cfg.contains("conditionals")) {
        const json& arr = cfg.at("conditionals");
        if (!arr.is_array()) throw config_error("compare: \"conditionals\" must be an array");
        json results = json::array();
        std::size_t idx = 0;
        for (const auto& c : arr) {
            check_keys(c, {"process", "t", "h", "n_reps"}, "compare.conditionals");
            const auto spec = parse_process(need(c, "process", "conditionals"),
                                            "compare.conditionals.process");
            const double t = need_num(c, "t", "conditionals");
            const double h = need_num(c, "h", "conditionals");
            const std::size_t n_reps = static_cast<std::size_t>(num_or(c, "n_reps", 1000000));
            RngStream rng(seed, stream_key(0xC0u, idx++));
            const auto est = conditional_mean_above(spec, t, h, n_reps, rng);
            results.push_back({{"repair", to_string(spec.repair)},
                               {"rho", spec.rho},
                               {"t", t},
                               {"h", h},
                               {"n_reps", n_reps},
                               {"estimate", est.value},
                               {"std_error", est.std_error},
                               {"n_exceedances", est.n_exceedances}});
            std::cout << "E[level_t | level_t > " << h << "] (" << to_string(spec.repair)
                      << ", rho=" << spec.rho << ", t=" << t
                      << ") = " << format_double(est.value) << " +- "
                      << format_double(est.std_error) << "\n";
        }
        out["conditional_means"] = results;
    }

    (void)threads;
    write_file(out_dir, "compare.json", out.dump(2) + "\n");
    return kExitOk;
}

int cmd_equivalent(const json& cfg, const fs::path& out_dir, std::uint64_t seed, unsigned) {
    check_keys(cfg, {"command", "beta", "rho2", "period_T", "order_times", "seed"}, "equivalent");
    const double beta = need_num(cfg, "beta", "equivalent");
    const double rho2 = need_num(cfg, "rho2", "equivalent");
    const double T = num_or(cfg, "period_T", 1.0);

    json echo = cfg;
    echo["seed"] = seed;
    json out = output_header("equivalent", echo);

    double rho1 = 0.0;
    try {
        rho1 = equivalent_rho1(rho2, beta);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("equivalent: ") + e.what());
    }
    out["rho1"] = rho1;
    std::cout << "matched ARD1 efficiency rho1 = " << format_double(rho1) << "\n";

    if (beta > 1.0) {
        const auto rep = variance_crossing(beta, rho2, T);
        out["variance_crossing"] = crossing_report_to_json(rep);
        if (rep.x_star)
            std::cout << "variance ranking switches at x* = " << format_double(*rep.x_star)
                      << ", restored from t* = " << format_double(*rep.t_star) << "\n";
        else
            std::cout << "no variance crossing: the ARA1 variance dominates at all times\n";
    } else {
        out["variance_crossing"] = nullptr;
        out["note"] = "variance crossing analysis requires beta > 1; for beta <= 1 the ARA1 "
                      "variance dominates the ARD1 variance at all times in the equivalent case";
        std::cout << out["note"].get<std::string>() << "\n";
    }

    if (cfg.contains("order_times")) {
        json orders = json::array();
        for (const auto& tv : cfg.at("order_times")) {
            const double t = tv.get<double>();
            json entry{{"t", t}, {"verdicts", json::array()}};
            for (const auto& v : equivalent_case_orders(beta, rho2, T, t))
                entry["verdicts"].push_back(verdict_to_json(v));
            orders.push_back(entry);
        }
        out["orders"] = orders;
    }

    write_file(out_dir, "equivalent.json", out.dump(2) + "\n");
    return kExitOk;
}

int cmd_optimize(const json& cfg, const fs::path& out_dir, std::uint64_t seed, unsigned threads) {
    check_keys(cfg,
               {"command", "policy", "shape", "rate_b", "rho_ard", "rho_ara", "reward", "costs",
                "n_grid", "M_grid", "T_grid", "mc", "seed"},
               "optimize");
    const std::string policy = need_str(cfg, "policy", "optimize");
    ComparisonScenario scenario{parse_shape(need(cfg, "shape", "optimize"), "optimize.shape"),
                                need_num(cfg, "rate_b", "optimize"), 1.0,
                                need_num(cfg, "rho_ard", "optimize"),
                                need_num(cfg, "rho_ara", "optimize")};
    const auto reward = parse_reward(need(cfg, "reward", "optimize"), "optimize.reward");
    const json& jc = need(cfg, "costs", "optimize");
    const std::vector<double> T_grid = parse_grid(need(cfg, "T_grid", "optimize"), "optimize.T_grid");
    const json& mc = cfg.contains("mc") ? cfg.at("mc") : json::object();

    json echo = cfg;
    echo["seed"] = seed;
    json out = output_header("optimize", echo);
    out["reward_derived"] = {{"b2", reward.b2()}, {"critical_level", reward.critical_level()}};

    PolicyResult ard, ara;
    std::string axis1_name;
    try {
        if (policy == "nT") {
            check_keys(jc, {"repair", "replacement"}, "optimize.costs");
            const CostSpec costs{need_num(jc, "repair", "costs"),
                                 need_num(jc, "replacement", "costs"), 0.0, 0.0};
            check_keys(mc, {"n_reps", "simpson_subintervals"}, "optimize.mc");
            NtMcConfig ncfg;
            ncfg.n_reps = static_cast<std::size_t>(num_or(mc, "n_reps", 5000));
            ncfg.simpson_subintervals = static_cast<int>(num_or(mc, "simpson_subintervals", 20));
            ncfg.seed = seed;
            ncfg.threads = threads;
            const auto n_raw = parse_grid(need(cfg, "n_grid", "optimize"), "optimize.n_grid");
            std::vector<long> n_grid;
            for (double v : n_raw) {
                if (v < 1 || v != std::floor(v))
                    throw config_error("optimize.n_grid: entries must be positive integers");
                n_grid.push_back(static_cast<long>(v));
            }
            const auto surfaces = optimize_nt(scenario, reward, costs, n_grid, T_grid, ncfg);
            ard = surfaces.ard;
            ara = surfaces.ara;
            axis1_name = "n";
        } else if (policy == "MT") {
            check_keys(jc, {"repair", "preventive", "corrective"}, "optimize.costs");
            const CostSpec costs{need_num(jc, "repair", "costs"), 0.0,
                                 need_num(jc, "preventive", "costs"),
                                 need_num(jc, "corrective", "costs")};
            if (costs.preventive_exceeds_corrective())
                std::cerr << "warning: preventive cost exceeds corrective cost\n";
            check_keys(mc, {"n_cycles", "steps_per_period"}, "optimize.mc");
            MtMcConfig mcfg;
            mcfg.n_cycles = static_cast<std::size_t>(num_or(mc, "n_cycles", 10000));
            mcfg.steps_per_period = static_cast<int>(num_or(mc, "steps_per_period", 50));
            mcfg.seed = seed;
            mcfg.threads = threads;
            const auto M_grid = parse_grid(need(cfg, "M_grid", "optimize"), "optimize.M_grid");
            const auto surfaces = optimize_mt(scenario, reward, costs, M_grid, T_grid, mcfg);
            ard = surfaces.ard;
            ara = surfaces.ara;
            axis1_name = "M";
        } else {
            throw config_error("optimize: policy must be \"nT\" or \"MT\"");
        }
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("optimize: ") + e.what());
    } catch (const std::domain_error& e) {
        throw config_error(std::string("optimize: ") + e.what());
    }

    out["ard"] = policy_result_to_json(ard, axis1_name);
    out["ara"] = policy_result_to_json(ara, axis1_name);

    // difference surface ARD - ARA with the joint standard error
    std::string diff;
    diff += "# schema_version: " + std::to_string(kSchemaVersion) + "\n";
    diff += "# config: " + config_echo(echo) + "\n";
    diff += axis1_name + ",T,rate_diff,joint_std_error\n";
    bool any_pos = false, any_neg = false;
    for (std::size_t i = 0; i < ard.axis1.size(); ++i)
        for (std::size_t j = 0; j < ard.axis2.size(); ++j) {
            const double d = ard.rates[i][j] - ara.rates[i][j];
            const double se = std::hypot(ard.std_errors[i][j], ara.std_errors[i][j]);
            if (d > 2.0 * se) any_pos = true;
            if (d < -2.0 * se) any_neg = true;
            diff += format_double(ard.axis1[i]) + "," + format_double(ard.axis2[j]) + "," +
                    format_double(d) + "," + format_double(se) + "\n";
        }
    out["difference"] = {{"ard_minus_ara_sign",
                          any_pos && any_neg ? "mixed" : (any_pos ? "positive" : (any_neg ? "negative" : "within_noise"))}};

    write_file(out_dir, "optimize_ard.csv", surface_csv(ard, axis1_name, config_echo(echo)));
    write_file(out_dir, "optimize_ara.csv", surface_csv(ara, axis1_name, config_echo(echo)));
    write_file(out_dir, "optimize_diff.csv", diff);
    write_file(out_dir, "optimize.json", out.dump(2) + "\n");

    std::cout << "ARD1 argmax: (" << axis1_name << "=" << format_double(ard.axis1[ard.argmax_i])
              << ", T=" << format_double(ard.axis2[ard.argmax_j])
              << ") rate=" << format_double(ard.rates[ard.argmax_i][ard.argmax_j]) << "\n";
    std::cout << "ARA1 argmax: (" << axis1_name << "=" << format_double(ara.axis1[ara.argmax_i])
              << ", T=" << format_double(ara.axis2[ara.argmax_j])
              << ") rate=" << format_double(ara.rates[ara.argmax_i][ara.argmax_j]) << "\n";
    return kExitOk;
}

// -------------------------------------------------------------------- presets

json preset_config(const std::string& name) {
    static const std::map<std::string, json> presets = [] {
        std::map<std::string, json> p;
        const json sum_shape = {{"kind", "sum"},
                                {"terms", json::array({{{"kind", "power_law"}, {"alpha", 1.0}, {"beta", 0.5}},
                                                       {{"kind", "power_law"}, {"alpha", 1.0}, {"beta", 0.75}}})}};
        const json reward_a = {{"alpha1", 0.1}, {"alpha2", 0.25}, {"k1", 1.0},
                               {"k2", 1.0},    {"b1", 11.0},     {"c", 4.0}};
        const json reward_b = {{"alpha1", 0.4}, {"alpha2", 0.5}, {"k1", 1.05},
                               {"k2", 1.07},   {"b1", 800.0},   {"c", 8.0}};

        p["sim-demo"] = {{"command", "simulate"},
                         {"process",
                          {{"shape", {{"kind", "power_law"}, {"alpha", 1.0}, {"beta", 0.75}}},
                           {"rate_b", 1.0},
                           {"repair", "ARD1"},
                           {"rho", 0.4},
                           {"period_T", 1.0}}},
                         {"horizon", 10.0},
                         {"dt", 0.25}};

        auto compare_power = [](double beta, double r1, double r2, double t) {
            return json{{"command", "compare"},
                        {"scenario",
                         {{"shape", {{"kind", "power_law"}, {"alpha", 1.0}, {"beta", beta}}},
                          {"rate_b", 1.0},
                          {"period_T", 1.0},
                          {"rho_ard", r1},
                          {"rho_ara", r2}}},
                        {"t", t}};
        };
        p["fig-icx-concave"] = compare_power(0.7, 0.75, 0.75, 10.5);
        p["fig-icx-convex"] = compare_power(1.1, 0.75, 0.75, 10.5);
        p["fig-icv-concave"] = compare_power(0.9, 0.8, 0.78, 10.5);
        p["fig-icv-convex"] = compare_power(1.1, 0.8, 0.78, 10.5);

        p["fig-means-convex"] = {{"command", "compare"},
                                 {"scenario",
                                  {{"shape", {{"kind", "exp_growth"}}},
                                   {"rate_b", 1.0},
                                   {"period_T", 1.0},
                                   {"rho_ard", 0.95},
                                   {"rho_ara", 0.5}}},
                                 {"t", 2.5},
                                 {"moment_t_max", 5.0}};
        p["fig-means-concave"] = {{"command", "compare"},
                                  {"scenario",
                                   {{"shape", {{"kind", "exp_saturating"}}},
                                    {"rate_b", 1.0},
                                    {"period_T", 1.0},
                                    {"rho_ard", 0.5},
                                    {"rho_ara", 0.95}}},
                                  {"t", 2.5},
                                  {"moment_t_max", 5.0}};

        auto lc_preset = [](double beta) {
            json j{{"command", "compare"},
                   {"scenario",
                    {{"shape", {{"kind", "power_law"}, {"alpha", 1.0}, {"beta", beta}}},
                     {"rate_b", 1.0},
                     {"period_T", 1.0},
                     {"rho_ard", 0.5},
                     {"rho_ara", 0.4}}},
                   {"t", 10.2}};
            j["lc"] = {{"n", 10}, {"t", 10.2}, {"x_from", 0.2}, {"x_to", 45.0}, {"x_points", 300}};
            return j;
        };
        p["fig-lc-concave"] = lc_preset(0.75);
        p["fig-lc-convex"] = lc_preset(1.25);

        // conditional means just past the ninth repair of a fast-wearing system
        auto remark_process = [](double rho) {
            return json{{"shape", {{"kind", "power_law"}, {"alpha", 1.0}, {"beta", 2.0}}},
                        {"rate_b", 1.0},
                        {"repair", "ARD1"},
                        {"rho", rho},
                        {"period_T", 0.2}};
        };
        p["remark4"] = {{"command", "compare"},
                        {"conditionals",
                         json::array({{{"process", remark_process(0.95)},
                                       {"t", 1.9},
                                       {"h", 0.5},
                                       {"n_reps", 1000000}},
                                      {{"process", remark_process(0.9)},
                                       {"t", 1.9},
                                       {"h", 0.5},
                                       {"n_reps", 1000000}}})}};

        p["nt-paper"] = {{"command", "optimize"},
                         {"policy", "nT"},
                         {"shape", sum_shape},
                         {"rate_b", 1.0},
                         {"rho_ard", 0.5},
                         {"rho_ara", 0.5},
                         {"reward", reward_a},
                         {"costs", {{"repair", 2.0}, {"replacement", 25.0}}},
                         {"n_grid", {{"from", 1}, {"to", 10}, {"count", 10}}},
                         {"T_grid", {{"from", 1.0}, {"to", 6.0}, {"count", 8}}},
                         {"mc", {{"n_reps", 5000}, {"simpson_subintervals", 20}}}};
        p["nt-paper-rho031"] = p["nt-paper"];
        p["nt-paper-rho031"]["rho_ard"] = 0.31;

        const double L_b = RewardSpec(0.4, 0.5, 1.05, 1.07, 800.0, 8.0).critical_level();
        p["mt-paper"] = {{"command", "optimize"},
                         {"policy", "MT"},
                         {"shape", {{"kind", "linear"}, {"a", 1.3}}},
                         {"rate_b", 0.8},
                         {"rho_ard", 0.9},
                         {"rho_ara", 0.9},
                         {"reward", reward_b},
                         {"costs", {{"repair", 200.0}, {"preventive", 1000.0}, {"corrective", 1300.0}}},
                         {"M_grid", {{"from", 1.0}, {"to", L_b * (1.0 - 1e-12)}, {"count", 13}}},
                         {"T_grid", {{"from", 1.14}, {"to", 4.0}, {"count", 10}}},
                         {"mc", {{"n_cycles", 10000}, {"steps_per_period", 50}}}};

        p["equivalent-beta2"] = {{"command", "equivalent"}, {"beta", 2.0}, {"rho2", 0.5},
                                 {"period_T", 1.0}};
        p["equivalent-beta12"] = {{"command", "equivalent"}, {"beta", 1.2}, {"rho2", 0.3},
                                  {"period_T", 1.0}};
        return p;
    }();
    const auto it = presets.find(name);
    if (it == presets.end()) {
        std::string known;
        for (const auto& [k, _] : presets) known += (known.empty() ? "" : ", ") + k;
        throw config_error("unknown preset \"" + name + "\" (available: " + known + ")");
    }
    return it->second;
}

// --------------------------------------------------------------------- driver

int run(int argc, char** argv) {
    CLI::App app{"gamma-process imperfect-maintenance toolkit"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned threads = default_threads();

    for (const char* name : {"simulate", "compare", "equivalent", "optimize"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--preset", preset, "named built-in configuration");
        sub->add_option("--seed", seed, "global RNG seed")->each([&](const std::string&) {
            seed_set = true;
        });
        sub->add_option("--threads", threads, "worker threads");
        sub->add_option("--out", out_dir, "output directory");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();

    json cfg = json::object();
    if (!preset.empty()) cfg = preset_config(preset);
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw config_error("cannot read config file: " + config_path);
        json file_cfg;
        try {
            file_cfg = json::parse(in);
        } catch (const json::parse_error& e) {
            throw config_error(std::string("config parse error: ") + e.what());
        }
        cfg.update(file_cfg);  // file overrides preset
    }
    if (cfg.contains("command") && cfg.at("command") != command)
        throw config_error("config is for command \"" + cfg.at("command").get<std::string>() +
                           "\", invoked as \"" + command + "\"");
    cfg["command"] = command;
    if (seed_set)
        cfg["seed"] = seed;
    else if (cfg.contains("seed"))
        seed = cfg.at("seed").get<std::uint64_t>();

    const fs::path out(out_dir);
    if (command == "simulate") return cmd_simulate(cfg, out, seed, threads);
    if (command == "compare") return cmd_compare(cfg, out, seed, threads);
    if (command == "equivalent") return cmd_equivalent(cfg, out, seed, threads);
    return cmd_optimize(cfg, out, seed, threads);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const internal_consistency_error& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
