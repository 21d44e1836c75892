// ergolab command-line front end: simulation runs, stationary densities,
// optimality-equation verification, reward sweeps, and ergodicity
// diagnostics, driven by flags or a JSON manifest.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage or parse error.
// Errors are reported as one-line JSON on stderr.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ergolab/ergodic.hpp"
#include "ergolab/hjb.hpp"
#include "ergolab/io.hpp"
#include "ergolab/model.hpp"
#include "ergolab/simulate.hpp"
#include "ergolab/stationary.hpp"
#include "ergolab/strategy.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ergolab;

namespace {

// ---------------------------------------------------------------- options

struct CommonCli {
    std::string config_path;
    std::string out_dir;
    std::optional<double> mu, cap, x0, dt, horizon, x_init;
    std::optional<std::uint64_t> seed, paths, stride;
};

struct StrategyCli {
    std::optional<double> rate, c, threshold;
};

void add_common_flags(CLI::App* cmd, CommonCli& opt) {
    cmd->add_option("--config", opt.config_path,
                    "JSON manifest; individual flags override its values");
    cmd->add_option("--out", opt.out_dir, "output directory, created if missing (default .)");
    cmd->add_option("--mu", opt.mu, "premium growth rate (default 1)");
    cmd->add_option("--cap", opt.cap, "maximum withdrawal rate, must exceed mu (default 3)");
    cmd->add_option("--x0", opt.x0, "strategy threshold (default 0)");
    cmd->add_option("--seed", opt.seed, "master RNG seed (default 0)");
    cmd->add_option("--dt", opt.dt, "time step (default 1e-3)");
    cmd->add_option("--horizon", opt.horizon, "total simulated time (default 1e4)");
    cmd->add_option("--paths", opt.paths, "ensemble size (default 1)");
    cmd->add_option("--x-init", opt.x_init, "initial state (default 0)");
    cmd->add_option("--stride", opt.stride, "record every k-th grid point in trajectories");
}

void add_strategy_flags(CLI::App* cmd, StrategyCli& opt) {
    cmd->add_option("--rate", opt.rate, "threshold strategy: withdrawal rate above the threshold");
    cmd->add_option("--c", opt.c, "threshold strategy: rate as a multiple of mu");
    cmd->add_option("--threshold", opt.threshold,
                    "threshold strategy: switch point (default: model x0)");
}

// ---------------------------------------------------------------- manifest

json load_manifest(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("config parse error: ") + err.what());
    }
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw std::invalid_argument(where + " must be a JSON object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw std::invalid_argument(where + ": unknown key \"" + key + "\"");
        }
    }
}

ModelParams resolve_model(const json& manifest, const CommonCli& cli) {
    ModelParams model;
    if (manifest.contains("model")) {
        const json& sec = manifest.at("model");
        check_keys(sec, "config model", {"mu", "cap", "x0"});
        model.mu = sec.value("mu", model.mu);
        model.cap = sec.value("cap", model.cap);
        model.x0 = sec.value("x0", model.x0);
    }
    if (cli.mu) model.mu = *cli.mu;
    if (cli.cap) model.cap = *cli.cap;
    if (cli.x0) model.x0 = *cli.x0;
    validate(model);
    return model;
}

SimConfig resolve_sim(const json& manifest, const CommonCli& cli) {
    SimConfig sim;
    sim.n_paths = 1;
    if (manifest.contains("sim")) {
        const json& sec = manifest.at("sim");
        check_keys(sec, "config sim",
                   {"dt", "horizon", "seed", "paths", "x_init", "record_stride"});
        sim.dt = sec.value("dt", sim.dt);
        sim.horizon = sec.value("horizon", sim.horizon);
        sim.seed = sec.value("seed", sim.seed);
        sim.n_paths = sec.value("paths", sim.n_paths);
        sim.x_init = sec.value("x_init", sim.x_init);
        sim.record_stride = sec.value("record_stride", sim.record_stride);
    }
    if (cli.dt) sim.dt = *cli.dt;
    if (cli.horizon) sim.horizon = *cli.horizon;
    if (cli.seed) sim.seed = *cli.seed;
    if (cli.paths) sim.n_paths = *cli.paths;
    if (cli.x_init) sim.x_init = *cli.x_init;
    if (cli.stride) sim.record_stride = *cli.stride;
    validate(sim);
    return sim;
}

Strategy resolve_strategy(const json& manifest, const StrategyCli& cli, const ModelParams& model) {
    if (cli.rate && cli.c) {
        throw std::invalid_argument("--rate and --c are mutually exclusive");
    }
    if (cli.rate || cli.c || cli.threshold) {
        const double rate = cli.rate ? *cli.rate : (cli.c ? *cli.c * model.mu : 2.0 * model.mu);
        return make_threshold(model, rate, cli.threshold.value_or(model.x0));
    }
    if (manifest.contains("strategy")) {
        Strategy s = strategy_from_json(manifest.at("strategy").dump());
        require_admissible(s, model);
        return s;
    }
    // Default: the canonical optimal two-piece strategy, rate 2*mu at x0.
    return make_threshold(model, 2.0 * model.mu, model.x0);
}

fs::path resolve_out_dir(const json& manifest, const CommonCli& cli) {
    std::string dir = ".";
    if (manifest.contains("out")) {
        if (!manifest.at("out").is_string()) {
            throw std::invalid_argument("config: \"out\" must be a string");
        }
        dir = manifest.at("out").get<std::string>();
    }
    if (!cli.out_dir.empty()) dir = cli.out_dir;
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + p.string());
    return p;
}

/// Final artifact name map for one command: defaults, overridden by the
/// manifest's "outputs" section. Unknown kinds and duplicate file names are
/// usage errors.
std::map<std::string, std::string> resolve_outputs(
    const json& manifest, const std::map<std::string, std::string>& defaults) {
    std::map<std::string, std::string> files = defaults;
    if (manifest.contains("outputs")) {
        const json& sec = manifest.at("outputs");
        if (!sec.is_object()) throw std::invalid_argument("config outputs must be a JSON object");
        for (const auto& [kind, value] : sec.items()) {
            if (files.find(kind) == files.end()) {
                throw std::invalid_argument("config outputs: unknown artifact kind \"" + kind +
                                            "\" for this command");
            }
            if (!value.is_string() || value.get<std::string>().empty()) {
                throw std::invalid_argument("config outputs: \"" + kind +
                                            "\" must be a non-empty file name");
            }
            files[kind] = value.get<std::string>();
        }
    }
    std::vector<std::string> names;
    names.reserve(files.size());
    for (const auto& [_, name] : files) names.push_back(name);
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
        throw std::invalid_argument("config outputs: file names must be distinct");
    }
    return files;
}

// ---------------------------------------------------------------- helpers

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (!(lo < hi) || n < 2) {
        throw std::invalid_argument("grid must have lo < hi and at least 2 points");
    }
    std::vector<double> xs(n);
    for (std::size_t k = 0; k < n; ++k) {
        xs[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return xs;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + path.string());
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("write failed for " + path.string());
}

json sim_echo(const SimConfig& sim) {
    return {{"dt", sim.dt},          {"horizon", sim.horizon},
            {"seed", sim.seed},      {"paths", sim.n_paths},
            {"x_init", sim.x_init},  {"record_stride", sim.record_stride}};
}

json model_echo(const ModelParams& model) {
    return {{"mu", model.mu}, {"cap", model.cap}, {"x0", model.x0}};
}

/// Every summary embeds the resolved configuration, so a report is
/// self-describing and reruns are comparable byte for byte.
json config_echo(const std::string& command, const ModelParams& model, const SimConfig* sim,
                 const Strategy* strategy, json command_params,
                 const std::map<std::string, std::string>& outputs) {
    json cfg;
    cfg["command"] = command;
    cfg["model"] = model_echo(model);
    if (sim != nullptr) cfg["sim"] = sim_echo(*sim);
    if (strategy != nullptr) cfg["strategy"] = json::parse(strategy_to_json(*strategy));
    if (!command_params.empty()) cfg[command] = std::move(command_params);
    cfg["outputs"] = outputs;
    return cfg;
}

void emit_summary(const fs::path& out_dir, const std::map<std::string, std::string>& outputs,
                  const json& summary) {
    const std::string text = summary.dump() + "\n";
    write_file(out_dir / outputs.at("summary_json"), text);
    std::cout << text;
}

// ---------------------------------------------------------------- commands

struct SimulateCli {
    CommonCli common;
    StrategyCli strategy;
    bool trajectory = false;
};

int cmd_simulate(const SimulateCli& cli) {
    const json manifest = load_manifest(cli.common.config_path);
    check_keys(manifest, "config",
               {"model", "sim", "strategy", "out", "outputs", "density", "hjb", "sweep",
                "diagnose", "simulate"});
    if (manifest.contains("simulate")) {
        check_keys(manifest.at("simulate"), "config simulate", {"trajectory"});
    }
    const ModelParams model = resolve_model(manifest, cli.common);
    const SimConfig sim = resolve_sim(manifest, cli.common);
    const Strategy strategy = resolve_strategy(manifest, cli.strategy, model);
    const fs::path out_dir = resolve_out_dir(manifest, cli.common);

    bool want_trajectory = cli.trajectory;
    if (manifest.contains("simulate")) {
        want_trajectory = manifest.at("simulate").value("trajectory", want_trajectory);
    }
    std::map<std::string, std::string> defaults{{"summary_json", "summary.json"}};
    if (want_trajectory) defaults["trajectory_csv"] = "trajectory.csv";
    const auto outputs = resolve_outputs(manifest, defaults);

    if (want_trajectory && sim.n_paths != 1) {
        throw std::invalid_argument("trajectory output requires paths = 1");
    }

    const EnsembleStats stats = simulate_ensemble(model, strategy, sim);

    if (want_trajectory) {
        const Trajectory trajectory = simulate_path(model, strategy, sim, 0);
        std::ostringstream csv;
        write_trajectory_csv(csv, trajectory);
        write_file(out_dir / outputs.at("trajectory_csv"), csv.str());
    }

    json summary;
    summary["config"] = config_echo("simulate", model, &sim, &strategy, {}, outputs);
    summary["ensemble"] = json::parse(ensemble_to_json(stats));
    emit_summary(out_dir, outputs, summary);
    return 0;
}

struct DensityCli {
    CommonCli common;
    StrategyCli strategy;
    std::string mode = "closed";
    std::string convention = "sde";
    std::optional<double> half_width;
    std::uint64_t cells = 4000;
    std::uint64_t grid_points = 2001;
};

int cmd_density(const DensityCli& cli) {
    const json manifest = load_manifest(cli.common.config_path);
    check_keys(manifest, "config",
               {"model", "sim", "strategy", "out", "outputs", "density", "hjb", "sweep",
                "diagnose", "simulate"});
    const ModelParams model = resolve_model(manifest, cli.common);
    const Strategy strategy = resolve_strategy(manifest, cli.strategy, model);
    const fs::path out_dir = resolve_out_dir(manifest, cli.common);

    std::string mode = cli.mode;
    std::string convention_name = cli.convention;
    std::optional<double> half_width = cli.half_width;
    std::uint64_t cells = cli.cells;
    std::uint64_t grid_points = cli.grid_points;
    if (manifest.contains("density")) {
        const json& sec = manifest.at("density");
        check_keys(sec, "config density",
                   {"mode", "convention", "half_width", "cells", "grid_points"});
        mode = sec.value("mode", mode);
        convention_name = sec.value("convention", convention_name);
        if (sec.contains("half_width")) half_width = sec.at("half_width").get<double>();
        cells = sec.value("cells", cells);
        grid_points = sec.value("grid_points", grid_points);
    }

    RateConvention convention;
    if (convention_name == "sde") {
        convention = RateConvention::SdeConsistent;
    } else if (convention_name == "halved") {
        convention = RateConvention::Halved;
    } else {
        throw std::invalid_argument("convention must be \"sde\" (decay rates 2|b|) or "
                                    "\"halved\" (decay rates |b|)");
    }
    const bool want_closed = mode == "closed" || mode == "both";
    const bool want_numeric = mode == "numeric" || mode == "both";
    if (!want_closed && !want_numeric) {
        throw std::invalid_argument("mode must be closed, numeric, or both");
    }

    std::map<std::string, std::string> defaults{{"summary_json", "summary.json"}};
    if (want_closed) defaults["closed_csv"] = "density_closed.csv";
    if (want_numeric) defaults["numeric_csv"] = "density_numeric.csv";
    const auto outputs = resolve_outputs(manifest, defaults);

    const double L = half_width ? *half_width : suggested_half_width(model, strategy);

    json summary;
    json params = {{"mode", mode},
                   {"convention", convention_name},
                   {"half_width", L},
                   {"cells", cells},
                   {"grid_points", grid_points}};
    summary["config"] = config_echo("density", model, nullptr, &strategy, params, outputs);

    if (want_closed) {
        const PiecewiseExpDensity closed = closed_form_density(model, strategy, convention);
        const std::vector<double> grid =
            linspace(closed.anchor - L, closed.anchor + L, grid_points);
        std::ostringstream csv;
        write_density_csv(csv, closed, grid);
        write_file(out_dir / outputs.at("closed_csv"), csv.str());

        const OccupationSplit split = occupation_probabilities(closed);
        summary["closed"] = {{"p_at_anchor", closed.p_at_anchor},
                             {"p_plus", split.p_plus},
                             {"p_minus", split.p_minus},
                             {"decay_left", closed.decay_left},
                             {"decay_right", closed.decay_right},
                             {"stationary_reward", stationary_reward(closed, strategy)}};
    }
    if (want_numeric) {
        const GridDensity numeric =
            solve_fokker_planck(model, strategy, L, static_cast<std::size_t>(cells));
        std::ostringstream csv;
        write_density_csv(csv, numeric);
        write_file(out_dir / outputs.at("numeric_csv"), csv.str());

        const OccupationSplit split = occupation_probabilities(numeric, numeric.anchor);
        summary["numeric"] = {{"p_plus", split.p_plus}, {"p_minus", split.p_minus}};
        if (want_closed) {
            // The numerical oracle discretizes the unit-diffusion equation,
            // so the cross-check always compares against the SDE-consistent
            // closed form, whatever convention the report uses.
            summary["l1_distance_sde_closed_vs_numeric"] = l1_distance(
                numeric, closed_form_density(model, strategy, RateConvention::SdeConsistent));
        }
    }
    emit_summary(out_dir, outputs, summary);
    return 0;
}

struct HjbCli {
    CommonCli common;
    std::optional<double> r;
    double grid_lo = -50.0;
    double grid_hi = 50.0;
    std::uint64_t grid_points = 10001;
};

int cmd_hjb(const HjbCli& cli) {
    const json manifest = load_manifest(cli.common.config_path);
    check_keys(manifest, "config",
               {"model", "sim", "strategy", "out", "outputs", "density", "hjb", "sweep",
                "diagnose", "simulate"});
    const ModelParams model = resolve_model(manifest, cli.common);
    const fs::path out_dir = resolve_out_dir(manifest, cli.common);

    std::optional<double> r = cli.r;
    double lo = cli.grid_lo;
    double hi = cli.grid_hi;
    std::uint64_t points = cli.grid_points;
    if (manifest.contains("hjb")) {
        const json& sec = manifest.at("hjb");
        check_keys(sec, "config hjb", {"r", "grid_lo", "grid_hi", "grid_points"});
        if (sec.contains("r")) r = sec.at("r").get<double>();
        lo = sec.value("grid_lo", lo);
        hi = sec.value("grid_hi", hi);
        points = sec.value("grid_points", points);
    }
    const double r_value = r.value_or(model.mu);

    const auto outputs = resolve_outputs(
        manifest, {{"summary_json", "summary.json"}, {"residual_csv", "residuals.csv"}});

    const PastingResult pasting = solve_pasting(model, r_value, model.x0);
    const std::vector<double> grid = linspace(lo, hi, points);

    // One row per grid point; a point sitting exactly on x0 contributes the
    // two one-sided residuals instead.
    std::vector<double> xs, residuals;
    xs.reserve(grid.size() + 1);
    residuals.reserve(grid.size() + 1);
    for (double x : grid) {
        if (x == pasting.candidate.x0) {
            xs.push_back(x);
            residuals.push_back(hjb_residual(pasting.candidate, model, x, Side::Left));
            xs.push_back(x);
            residuals.push_back(hjb_residual(pasting.candidate, model, x, Side::Right));
        } else {
            xs.push_back(x);
            residuals.push_back(hjb_residual(pasting.candidate, model, x));
        }
    }
    std::ostringstream csv;
    write_residual_csv(csv, xs, residuals);
    write_file(out_dir / outputs.at("residual_csv"), csv.str());

    const ArgsupStructure argsup = argsup_structure(pasting.candidate, model, grid);
    std::map<std::string, std::size_t> action_counts{
        {"zero-only", 0}, {"cap-only", 0}, {"full-interval", 0}};
    for (const ArgsupPoint& point : argsup.points) ++action_counts[to_string(point.action)];

    json summary;
    json params = {{"r", r_value}, {"grid_lo", lo}, {"grid_hi", hi}, {"grid_points", points}};
    summary["config"] = config_echo("hjb", model, nullptr, nullptr, params, outputs);
    summary["candidate"] = json::parse(candidate_to_json(pasting.candidate));
    summary["polynomial_growth"] = pasting.polynomial_growth;
    summary["max_abs_residual"] = verify_candidate_on_grid(pasting.candidate, model, grid);
    summary["argsup_counts"] = action_counts;
    emit_summary(out_dir, outputs, summary);
    return 0;
}

struct SweepCli {
    CommonCli common;
    std::vector<double> c_list{1.5, 2.0, 2.5, 3.0};
    std::vector<double> x0_list{0.0, 1.0, 5.0};
    double burn_in = 0.1;
};

int cmd_sweep(const SweepCli& cli) {
    const json manifest = load_manifest(cli.common.config_path);
    check_keys(manifest, "config",
               {"model", "sim", "strategy", "out", "outputs", "density", "hjb", "sweep",
                "diagnose", "simulate"});
    const ModelParams base_model = resolve_model(manifest, cli.common);
    const SimConfig base_sim = resolve_sim(manifest, cli.common);
    const fs::path out_dir = resolve_out_dir(manifest, cli.common);

    std::vector<double> c_list = cli.c_list;
    std::vector<double> x0_list = cli.x0_list;
    double burn_in = cli.burn_in;
    if (manifest.contains("sweep")) {
        const json& sec = manifest.at("sweep");
        check_keys(sec, "config sweep", {"c_list", "x0_list", "burn_in"});
        if (sec.contains("c_list")) c_list = sec.at("c_list").get<std::vector<double>>();
        if (sec.contains("x0_list")) x0_list = sec.at("x0_list").get<std::vector<double>>();
        burn_in = sec.value("burn_in", burn_in);
    }

    const auto outputs = resolve_outputs(
        manifest, {{"summary_json", "summary.json"}, {"sweep_csv", "sweep.csv"}});

    // Deterministic row order and per-cell sub-seeds, independent of any
    // execution interleaving.
    std::vector<std::pair<double, double>> cells;
    for (double c : c_list) {
        for (double x0 : x0_list) cells.emplace_back(c, x0);
    }
    std::sort(cells.begin(), cells.end());

    std::vector<SweepRow> rows;
    rows.reserve(cells.size());
    std::size_t failed = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto [c, x0] = cells[i];
        SweepRow row;
        row.c = c;
        row.x0 = x0;
        try {
            ModelParams cell_model = base_model;
            cell_model.x0 = x0;
            SimConfig cell_sim = base_sim;
            cell_sim.x_init = x0;  // start at the threshold: no transient ramp
            cell_sim.seed = base_sim.seed + i;
            const Strategy strategy = make_threshold(cell_model, c * cell_model.mu, x0);
            const SweepCellResult cell = evaluate_sweep_cell(cell_model, strategy, cell_sim, burn_in);
            row.reward_estimate = cell.reward.value;
            row.std_error = cell.reward.std_error;
            row.verdict = to_string(cell.verdict);
        } catch (const std::exception& err) {
            row.reward_estimate = std::numeric_limits<double>::quiet_NaN();
            row.std_error = std::numeric_limits<double>::quiet_NaN();
            row.verdict = std::string("error: ") + err.what();
            ++failed;
        }
        rows.push_back(std::move(row));
    }

    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    write_file(out_dir / outputs.at("sweep_csv"), csv.str());

    json summary;
    json params = {{"c_list", c_list}, {"x0_list", x0_list}, {"burn_in", burn_in}};
    summary["config"] = config_echo("sweep", base_model, &base_sim, nullptr, params, outputs);
    summary["rows"] = rows.size();
    summary["failed_cells"] = failed;
    emit_summary(out_dir, outputs, summary);
    return 0;
}

struct DiagnoseCli {
    CommonCli common;
    StrategyCli strategy;
    std::vector<double> checkpoints;
    double ergodic_below = 0.02;
    double transient_above = 0.2;
};

int cmd_diagnose(const DiagnoseCli& cli) {
    const json manifest = load_manifest(cli.common.config_path);
    check_keys(manifest, "config",
               {"model", "sim", "strategy", "out", "outputs", "density", "hjb", "sweep",
                "diagnose", "simulate"});
    const ModelParams model = resolve_model(manifest, cli.common);
    const SimConfig sim = resolve_sim(manifest, cli.common);
    const Strategy strategy = resolve_strategy(manifest, cli.strategy, model);
    const fs::path out_dir = resolve_out_dir(manifest, cli.common);

    std::vector<double> checkpoints = cli.checkpoints;
    DiagnosticThresholds thresholds{cli.ergodic_below, cli.transient_above};
    if (manifest.contains("diagnose")) {
        const json& sec = manifest.at("diagnose");
        check_keys(sec, "config diagnose", {"checkpoints", "ergodic_below", "transient_above"});
        if (sec.contains("checkpoints")) {
            checkpoints = sec.at("checkpoints").get<std::vector<double>>();
        }
        thresholds.ergodic_below = sec.value("ergodic_below", thresholds.ergodic_below);
        thresholds.transient_above = sec.value("transient_above", thresholds.transient_above);
    }
    if (checkpoints.empty()) {
        // Default: eight evenly spaced checkpoints up to the horizon.
        for (int k = 1; k <= 8; ++k) {
            checkpoints.push_back(sim.horizon * static_cast<double>(k) / 8.0);
        }
    }

    const auto outputs = resolve_outputs(
        manifest, {{"summary_json", "summary.json"}, {"ratio_csv", "ratio.csv"}});

    const ErgodicityDiagnostic diag =
        drift_diagnostic(model, strategy, sim, checkpoints, thresholds);

    std::ostringstream csv;
    write_ratio_curve_csv(csv, diag.ratio_curve);
    write_file(out_dir / outputs.at("ratio_csv"), csv.str());

    json summary;
    json params = {{"checkpoints", checkpoints},
                   {"ergodic_below", thresholds.ergodic_below},
                   {"transient_above", thresholds.transient_above}};
    summary["config"] = config_echo("diagnose", model, &sim, &strategy, params, outputs);
    summary["verdict"] = to_string(diag.verdict);
    summary["final_ratio"] = diag.final_ratio;
    emit_summary(out_dir, outputs, summary);
    return 0;
}

int emit_error(const std::string& kind, const std::string& message, int code) {
    json err;
    err["error"] = kind;
    err["message"] = message;
    err["exit_code"] = code;
    std::cerr << err.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ergolab: a numerical laboratory for an ergodically controlled "
                 "dividend diffusion dX = (mu - a(X)) dt + dW"};
    app.set_version_flag("--version", "0.1.0");
    app.require_subcommand(1);
    app.footer("Environment: ERGOLAB_THREADS caps simulation parallelism.\n"
               "Exit codes: 0 success, 1 numerical failure, 2 usage/parse error.");

    SimulateCli simulate_cli;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "run paths of the controlled SDE and report ensemble statistics");
    add_common_flags(simulate, simulate_cli.common);
    add_strategy_flags(simulate, simulate_cli.strategy);
    simulate->add_flag("--trajectory", simulate_cli.trajectory,
                       "also write the single-path trajectory CSV (requires --paths 1)");

    DensityCli density_cli;
    CLI::App* density = app.add_subcommand(
        "density", "stationary density: closed form and/or numerical oracle");
    add_common_flags(density, density_cli.common);
    add_strategy_flags(density, density_cli.strategy);
    density->add_option("--mode", density_cli.mode, "closed | numeric | both (default closed)");
    density->add_option("--convention", density_cli.convention,
                        "sde (rates 2|b|) | halved (rates |b|) (default sde)");
    density->add_option("--half-width", density_cli.half_width,
                        "truncation half width (default: 40/min decay rate)");
    density->add_option("--cells", density_cli.cells, "finite-volume cells (default 4000)");
    density->add_option("--grid-points", density_cli.grid_points,
                        "closed-form CSV sample count (default 2001)");

    HjbCli hjb_cli;
    CLI::App* hjb = app.add_subcommand(
        "hjb", "solve the pasting system for given r and verify the optimality equation");
    add_common_flags(hjb, hjb_cli.common);
    hjb->add_option("--r", hjb_cli.r, "candidate long-run reward (default: mu)");
    hjb->add_option("--grid-lo", hjb_cli.grid_lo, "residual grid lower end (default -50)");
    hjb->add_option("--grid-hi", hjb_cli.grid_hi, "residual grid upper end (default 50)");
    hjb->add_option("--grid-points", hjb_cli.grid_points, "residual grid size (default 10001)");

    SweepCli sweep_cli;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "reward estimates over a (c, x0) grid of threshold strategies");
    add_common_flags(sweep, sweep_cli.common);
    sweep->add_option("--c-list", sweep_cli.c_list, "rate multiples of mu (default 1.5,2,2.5,3)")
        ->delimiter(',');
    sweep->add_option("--x0-list", sweep_cli.x0_list, "thresholds (default 0,1,5)")
        ->delimiter(',');
    sweep->add_option("--burn-in", sweep_cli.burn_in, "burn-in fraction (default 0.1)");

    DiagnoseCli diagnose_cli;
    CLI::App* diagnose = app.add_subcommand(
        "diagnose", "ergodicity diagnostic: mean X_t / t curve and verdict");
    add_common_flags(diagnose, diagnose_cli.common);
    add_strategy_flags(diagnose, diagnose_cli.strategy);
    diagnose->add_option("--checkpoints", diagnose_cli.checkpoints,
                         "checkpoint times (default: 8 evenly spaced)")
        ->delimiter(',');
    diagnose->add_option("--ergodic-below", diagnose_cli.ergodic_below,
                         "|ratio|/mu below this is ergodic-consistent (default 0.02)");
    diagnose->add_option("--transient-above", diagnose_cli.transient_above,
                         "ratio/mu above this is transient-positive (default 0.2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);  // --help, --version
        return emit_error("usage", err.what(), 2);
    }

    try {
        if (*simulate) return cmd_simulate(simulate_cli);
        if (*density) return cmd_density(density_cli);
        if (*hjb) return cmd_hjb(hjb_cli);
        if (*sweep) return cmd_sweep(sweep_cli);
        if (*diagnose) return cmd_diagnose(diagnose_cli);
        return emit_error("usage", "no subcommand given", 2);
    } catch (const std::invalid_argument& err) {
        return emit_error("usage", err.what(), 2);
    } catch (const std::exception& err) {
        return emit_error("numerical", err.what(), 1);
    }
}
