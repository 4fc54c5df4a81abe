// Command-line front end: configuration ingestion, solve/classify/sweep,
// figure-data reproduction, detector bound validation, and brute-force
// verification. Exit codes: 0 ok, 2 configuration error, 3 numerical
// failure or bound violation.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cuav/cuav.hpp"

namespace {

using namespace cuav;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string output_path;
    std::string format;
    std::string grid = "512x512";
    std::uint64_t trials = 100000;
    std::uint64_t seed = 12345;
    bool verify = false;
};

RunConfig resolve_config(const CommonOpts& opts) {
    if (!opts.config_path.empty() && !opts.preset.empty())
        throw config_error("pass either --config or --preset, not both");
    RunConfig cfg;
    if (!opts.config_path.empty())
        cfg = load_config(opts.config_path);
    else if (!opts.preset.empty())
        cfg = load_preset(opts.preset);
    else
        throw config_error("one of --config or --preset is required");
    if (!opts.output_path.empty()) {
        OutputSpec out = cfg.output.value_or(OutputSpec{});
        out.path = opts.output_path;
        cfg.output = out;
    }
    if (!opts.format.empty()) {
        OutputSpec out = cfg.output.value_or(OutputSpec{});
        out.format = opts.format == "json" ? OutputFormat::json : OutputFormat::csv;
        if (opts.format != "json" && opts.format != "csv")
            throw config_error("--format must be csv or json");
        cfg.output = out;
    }
    return cfg;
}

GridSpec parse_grid(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos)
        throw config_error("--grid must look like 512x512");
    GridSpec g;
    g.n_d = std::stoi(s.substr(0, x));
    g.n_theta = std::stoi(s.substr(x + 1));
    if (g.n_d < 2 || g.n_theta < 2)
        throw config_error("--grid resolutions must be >= 2");
    return g;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output && !cfg.output->path.empty()) {
        std::ofstream out(cfg.output->path, std::ios::binary);
        if (!out) throw config_error("cannot open output file: " + cfg.output->path);
        out << text;
    } else {
        std::cout << text;
    }
}

PlanSolution run_solve(const RunConfig& cfg) {
    if (cfg.mode == Mode::vertical)
        return solve_vertical(cfg.env, cfg.radio, cfg.geom.d_min, cfg.geom.d_max,
                              cfg.geom.L);
    return solve_general(cfg.env, cfg.radio, cfg.geom, cfg.search);
}

void apply_sweep_value(RunConfig& cfg, const std::string& var, double v) {
    if (var == "epsilon")
        cfg.radio.epsilon = v;
    else if (var == "L_m")
        cfg.geom.L = v;
    else if (var == "p_max_dbm")
        cfg.radio.p_max = dbm_to_watt(v);
    else if (var == "sigma2_b_dbm")
        cfg.radio.sigma2_b = dbm_to_watt(v);
    else if (var == "sigma2_w_dbm")
        cfg.radio.sigma2_w = dbm_to_watt(v);
    else if (var == "theta_min_deg")
        cfg.geom.theta_min = deg2rad(v);
    else if (var == "d_min_m" || var == "h_min_m")
        cfg.geom.d_min = v;
    else if (var == "d_max_m" || var == "h_max_m")
        cfg.geom.d_max = v;
    else if (var == "blocklength")
        cfg.radio.n = static_cast<long>(v);
    else
        throw config_error("unknown sweep variable \"" + var + "\"");
}

int verify_against_oracle(const RunConfig& cfg, const PlanSolution& sol,
                          const GridSpec& grid) {
    const PlanSolution oracle = brute_force_oracle(cfg.env, cfg.radio, cfg.geom, grid);
    const double gap = (oracle.snr - sol.snr) / oracle.snr;
    std::cout << "oracle: gamma_b=" << fmt_double(linear_to_db(oracle.snr))
              << " dB at (d_w=" << fmt_double(oracle.placement.d_w)
              << " m, theta_w=" << fmt_double(rad2deg(oracle.placement.theta_w))
              << " deg); solver-vs-oracle relative gap=" << fmt_double(gap) << "\n";
    if (gap > 1e-3) {
        std::cerr << "error: solver fell more than 0.1% below the exhaustive grid\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int cmd_solve(const CommonOpts& opts) {
    const RunConfig cfg = resolve_config(opts);
    const PlanSolution sol = run_solve(cfg);
    nlohmann::json j = solution_to_json(sol);
    if (cfg.mode == Mode::vertical) {
        j["h_m"] = sol.placement.d_w;
        j.erase("d_w_m");
        j.erase("theta_w_deg");
    }
    std::ostringstream body;
    if (cfg.output && cfg.output->format == OutputFormat::json) {
        body << j.dump(2) << "\n";
    } else {
        for (const auto& [k, v] : j.items()) {
            body << k << "=" << (v.is_string() ? v.get<std::string>() : fmt_double(v.get<double>()))
                 << "\n";
        }
    }
    emit(cfg, body.str());
    if (opts.verify) return verify_against_oracle(cfg, sol, parse_grid(opts.grid));
    return kExitOk;
}

int cmd_classify(const CommonOpts& opts) {
    const RunConfig cfg = resolve_config(opts);
    std::cout << to_string(classify_scenario(cfg.geom)) << "\n";
    return kExitOk;
}

int cmd_sweep(const CommonOpts& opts) {
    const RunConfig base = resolve_config(opts);
    if (!base.sweep)
        throw config_error("sweep requires a sweep section in the config");
    const SweepSpec sw = *base.sweep;
    std::ostringstream csv;
    nlohmann::json rows = nlohmann::json::array();
    csv << "value,d_w_m,theta_w_deg,power_dbm,gamma_b_db,d01_nats,scenario,case\n";
    for (int i = 0; i <= sw.steps; ++i) {
        const double v = sw.from + (sw.to - sw.from) * i / std::max(1, sw.steps);
        RunConfig cfg = base;
        apply_sweep_value(cfg, sw.variable, v);
        const PlanSolution sol = run_solve(cfg);
        csv << fmt_double(v) << "," << fmt_double(sol.placement.d_w) << ","
            << fmt_double(rad2deg(sol.placement.theta_w)) << ","
            << fmt_double(watt_to_dbm(sol.power)) << ","
            << fmt_double(linear_to_db(sol.snr)) << "," << fmt_double(sol.d01) << ","
            << to_string(sol.scenario) << "," << sol.case_label << "\n";
        nlohmann::json row = solution_to_json(sol);
        row["value"] = v;
        rows.push_back(row);
    }
    const bool json_out = base.output && base.output->format == OutputFormat::json;
    emit(base, json_out ? rows.dump(2) + "\n" : csv.str());
    return kExitOk;
}

int cmd_figure(const std::string& name, const CommonOpts& opts) {
    std::ostringstream csv;
    RunConfig io_cfg;  // carries output path/format for emit()
    io_cfg.output = OutputSpec{};
    if (!opts.output_path.empty()) io_cfg.output->path = opts.output_path;

    if (name == "location_vs_L") {
        const RunConfig base = load_preset("location_vs_L");
        csv << "L_m,scenario,case,d_w_m,theta_w_deg,power_dbm,gamma_b_db,d01_nats,binding\n";
        const SweepSpec sw = *base.sweep;
        for (int i = 0; i <= sw.steps; ++i) {
            const double L = sw.from + (sw.to - sw.from) * i / sw.steps;
            RunConfig cfg = base;
            cfg.geom.L = L;
            const PlanSolution sol = solve_general(cfg.env, cfg.radio, cfg.geom, cfg.search);
            csv << fmt_double(L) << "," << to_string(sol.scenario) << ","
                << sol.case_label << "," << fmt_double(sol.placement.d_w) << ","
                << fmt_double(rad2deg(sol.placement.theta_w)) << ","
                << fmt_double(watt_to_dbm(sol.power)) << ","
                << fmt_double(linear_to_db(sol.snr)) << "," << fmt_double(sol.d01)
                << "," << binding_list(sol.binding_constraints) << "\n";
        }
    } else if (name == "snr_vs_eps") {
        csv << "d_max_m,epsilon,gamma_opt_db,gamma_nearest_db,gamma_max_angle_db,case\n";
        for (const char* preset :
             {"snr_vs_eps_dmax2500", "snr_vs_eps", "snr_vs_eps_dmax3500"}) {
            const RunConfig base = load_preset(preset);
            const SweepSpec sw = *base.sweep;
            const PolarPlacement near = heuristic_nearest(base.geom, base.search);
            const PolarPlacement high = heuristic_max_angle(base.env, base.geom, base.search);
            for (int i = 0; i <= sw.steps; ++i) {
                RunConfig cfg = base;
                cfg.radio.epsilon = sw.from + (sw.to - sw.from) * i / sw.steps;
                const PlanSolution sol = solve_general(cfg.env, cfg.radio, cfg.geom, cfg.search);
                const CovertBudget budget = CovertBudget::from_epsilon(cfg.radio.epsilon);
                const auto gamma_at = [&](const PolarPlacement& p) {
                    const double power = std::min(
                        cfg.radio.p_max, max_covert_power(cfg.env, cfg.radio, p, budget));
                    return effective_snr(cfg.env, cfg.radio, p, cfg.geom.L, power);
                };
                csv << fmt_double(cfg.geom.d_max) << "," << fmt_double(cfg.radio.epsilon)
                    << "," << fmt_double(linear_to_db(sol.snr)) << ","
                    << fmt_double(linear_to_db(gamma_at(near))) << ","
                    << fmt_double(linear_to_db(gamma_at(high))) << "," << sol.case_label
                    << "\n";
            }
        }
    } else if (name == "snr_vs_theta_min") {
        csv << "L_m,theta_min_deg,gamma_opt_db,gamma_nearest_db,gamma_max_angle_db,scenario\n";
        for (const char* preset : {"snr_vs_theta_min_L10", "snr_vs_theta_min_L15"}) {
            const RunConfig base = load_preset(preset);
            const SweepSpec sw = *base.sweep;
            for (int i = 0; i <= sw.steps; ++i) {
                RunConfig cfg = base;
                cfg.geom.theta_min = deg2rad(sw.from + (sw.to - sw.from) * i / sw.steps);
                const PlanSolution sol = solve_general(cfg.env, cfg.radio, cfg.geom, cfg.search);
                const CovertBudget budget = CovertBudget::from_epsilon(cfg.radio.epsilon);
                const PolarPlacement near = heuristic_nearest(cfg.geom, cfg.search);
                const PolarPlacement high =
                    heuristic_max_angle(cfg.env, cfg.geom, cfg.search);
                const auto gamma_at = [&](const PolarPlacement& p) {
                    const double power = std::min(
                        cfg.radio.p_max, max_covert_power(cfg.env, cfg.radio, p, budget));
                    return effective_snr(cfg.env, cfg.radio, p, cfg.geom.L, power);
                };
                csv << fmt_double(cfg.geom.L) << ","
                    << fmt_double(rad2deg(cfg.geom.theta_min)) << ","
                    << fmt_double(linear_to_db(sol.snr)) << ","
                    << fmt_double(linear_to_db(gamma_at(near))) << ","
                    << fmt_double(linear_to_db(gamma_at(high))) << ","
                    << to_string(sol.scenario) << "\n";
            }
        }
    } else if (name == "height_vs_eps") {
        const RunConfig base = load_preset("height_vs_eps");
        csv << "epsilon,case,h_star_m,power_dbm,gamma_b_db,h_dagger_m,h_ddagger_m,"
               "h_min_m,h_max_m\n";
        const SweepSpec sw = *base.sweep;
        const double h_dag = optimal_height_unconstrained(base.env, base.geom.L);
        for (int i = 0; i <= sw.steps; ++i) {
            RunConfig cfg = base;
            cfg.radio.epsilon = sw.from + (sw.to - sw.from) * i / sw.steps;
            const PlanSolution sol = solve_vertical(cfg.env, cfg.radio, cfg.geom.d_min,
                                                    cfg.geom.d_max, cfg.geom.L);
            const double h_ddag = covert_height_threshold(
                cfg.env, cfg.radio, CovertBudget::from_epsilon(cfg.radio.epsilon));
            csv << fmt_double(cfg.radio.epsilon) << "," << sol.case_label << ","
                << fmt_double(sol.placement.d_w) << ","
                << fmt_double(watt_to_dbm(sol.power)) << ","
                << fmt_double(linear_to_db(sol.snr)) << "," << fmt_double(h_dag) << ","
                << fmt_double(h_ddag) << "," << fmt_double(cfg.geom.d_min) << ","
                << fmt_double(cfg.geom.d_max) << "\n";
        }
    } else {
        throw config_error("unknown figure \"" + name +
                           "\" (known: location_vs_L, snr_vs_eps, snr_vs_theta_min, "
                           "height_vs_eps)");
    }
    emit(io_cfg, csv.str());
    return kExitOk;
}

int cmd_validate_bound(const CommonOpts& opts) {
    // Lattice of blocklengths and received-SNR ratios; Monte-Carlo spot
    // checks on a seeded subsample.
    constexpr int kN = 20;
    const double n_lo = 10, n_hi = 1000;
    const double x_lo = 1e-4, x_hi = 10.0;
    std::ostringstream csv;
    csv << "n,x,d01,xi_exact,bound,slack,xi_mc,mc_tolerance\n";
    double min_slack = 1e300;
    int violations = 0;
    int mc_failures = 0;

    std::vector<std::pair<int, int>> mc_cells;
    SplitMix64 pick(opts.seed);
    for (int k = 0; k < 20; ++k)
        mc_cells.emplace_back(static_cast<int>(pick.next() % kN),
                              static_cast<int>(pick.next() % kN));

    for (int i = 0; i < kN; ++i) {
        const long n = std::lround(n_lo * std::pow(n_hi / n_lo, i / double(kN - 1)));
        for (int j = 0; j < kN; ++j) {
            const double x = x_lo * std::pow(x_hi / x_lo, j / double(kN - 1));
            RadioParams radio{1.0, 1.0, n, 1.0, 0.1};
            const double p_bar = x * radio.sigma2_w;
            const DetectionResult exact = exact_min_error_rate(radio, p_bar);
            const double d01 = kl_divergence(radio, p_bar);
            const double bound = error_rate_lower_bound(d01);
            const double slack = exact.xi_star - bound;
            min_slack = std::min(min_slack, slack);
            if (slack < -1e-9) ++violations;
            std::string mc_s, tol_s;
            for (const auto& cell : mc_cells) {
                if (cell.first == i && cell.second == j) {
                    const DetectionResult mc =
                        simulate_detection(radio, p_bar, opts.trials, opts.seed);
                    const double tol = 4.0 * std::sqrt(exact.xi_star *
                                                       (2.0 - exact.xi_star) /
                                                       double(opts.trials));
                    mc_s = fmt_double(mc.xi_star);
                    tol_s = fmt_double(tol);
                    if (std::abs(mc.xi_star - exact.xi_star) > tol) ++mc_failures;
                    break;
                }
            }
            csv << n << "," << fmt_double(x) << "," << fmt_double(d01) << ","
                << fmt_double(exact.xi_star) << "," << fmt_double(bound) << ","
                << fmt_double(slack) << "," << mc_s << "," << tol_s << "\n";
        }
    }
    RunConfig io_cfg;
    io_cfg.output = OutputSpec{};
    if (!opts.output_path.empty()) io_cfg.output->path = opts.output_path;
    emit(io_cfg, csv.str());
    std::cout << "min slack = " << fmt_double(min_slack) << ", bound violations = "
              << violations << ", monte-carlo disagreements = " << mc_failures << "\n";
    return (violations > 0 || mc_failures > 0) ? kExitNumeric : kExitOk;
}

int cmd_oracle(const CommonOpts& opts) {
    const RunConfig cfg = resolve_config(opts);
    const PlanSolution sol = run_solve(cfg);
    std::cout << "solver: gamma_b=" << fmt_double(linear_to_db(sol.snr))
              << " dB at (d_w=" << fmt_double(sol.placement.d_w)
              << " m, theta_w=" << fmt_double(rad2deg(sol.placement.theta_w))
              << " deg)\n";
    return verify_against_oracle(cfg, sol, parse_grid(opts.grid));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covert-link UAV placement and transmit-power planner"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string figure_name;

    const auto add_common = [&](CLI::App* sub, bool with_io = true) {
        sub->add_option("--config", opts.config_path, "JSON config path");
        sub->add_option("--preset", opts.preset, "named parameter preset");
        if (with_io) {
            sub->add_option("--output", opts.output_path, "output file path");
            sub->add_option("--format", opts.format, "csv or json");
        }
    };

    auto* solve = app.add_subcommand("solve", "solve one placement/power problem");
    add_common(solve);
    solve->add_flag("--verify", opts.verify, "cross-check against the exhaustive grid");
    solve->add_option("--grid", opts.grid, "oracle grid, e.g. 512x512");

    auto* classify = app.add_subcommand("classify", "print the geometry scenario");
    add_common(classify, false);

    auto* sweep = app.add_subcommand("sweep", "solve along the configured sweep axis");
    add_common(sweep);

    auto* figure = app.add_subcommand("figure", "emit a named evaluation data set");
    figure->add_option("name", figure_name, "location_vs_L | snr_vs_eps | snr_vs_theta_min | height_vs_eps")
        ->required();
    figure->add_option("--output", opts.output_path, "output file path");

    auto* vb = app.add_subcommand("validate-bound",
                                  "check the exact detector against the KL bound");
    vb->add_option("--trials", opts.trials, "Monte-Carlo trials per sampled cell");
    vb->add_option("--seed", opts.seed, "Monte-Carlo seed");
    vb->add_option("--output", opts.output_path, "output file path");

    auto* oracle = app.add_subcommand("oracle", "compare the solver with the exhaustive grid");
    add_common(oracle, false);
    oracle->add_option("--grid", opts.grid, "oracle grid, e.g. 512x512");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(opts);
        if (classify->parsed()) return cmd_classify(opts);
        if (sweep->parsed()) return cmd_sweep(opts);
        if (figure->parsed()) return cmd_figure(figure_name, opts);
        if (vb->parsed()) return cmd_validate_bound(opts);
        if (oracle->parsed()) return cmd_oracle(opts);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const invalid_parameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
