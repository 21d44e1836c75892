#include "ergolab/io.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace ergolab {

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_number: conversion failed");
    }
    return {buf, ptr};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
    os << "t,x,reward_integral\n";
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        os << format_number(trajectory.times[i]) << ',' << format_number(trajectory.states[i])
           << ',' << format_number(trajectory.reward_integral[i]) << '\n';
    }
}

void write_density_csv(std::ostream& os, const GridDensity& density) {
    os << "x,p\n";
    for (std::size_t i = 0; i < density.grid.size(); ++i) {
        os << format_number(density.grid[i]) << ',' << format_number(density.values[i]) << '\n';
    }
}

void write_density_csv(std::ostream& os, const PiecewiseExpDensity& density,
                       std::span<const double> grid) {
    os << "x,p\n";
    for (double x : grid) {
        os << format_number(x) << ',' << format_number(density.evaluate(x)) << '\n';
    }
}

void write_ratio_curve_csv(std::ostream& os, const std::vector<RatioPoint>& curve) {
    os << "t,ratio\n";
    for (const RatioPoint& point : curve) {
        os << format_number(point.t) << ',' << format_number(point.ratio) << '\n';
    }
}

void write_residual_csv(std::ostream& os, std::span<const double> xs,
                        std::span<const double> residuals) {
    if (xs.size() != residuals.size()) {
        throw std::invalid_argument("write_residual_csv: size mismatch");
    }
    os << "x,residual\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << format_number(xs[i]) << ',' << format_number(residuals[i]) << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "c,x0,reward_estimate,std_error,verdict\n";
    for (const SweepRow& row : rows) {
        // The verdict column must not break the CSV shape.
        std::string verdict = row.verdict;
        for (char& ch : verdict) {
            if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
        }
        os << format_number(row.c) << ',' << format_number(row.x0) << ','
           << format_number(row.reward_estimate) << ',' << format_number(row.std_error) << ','
           << verdict << '\n';
    }
}

std::string strategy_to_json(const Strategy& strategy) {
    const auto* pc = strategy.piecewise_form();
    if (pc == nullptr) {
        throw std::invalid_argument("strategy_to_json: only piecewise strategies have a JSON form");
    }
    nlohmann::json j;
    j["type"] = "piecewise";
    j["breakpoints"] = pc->breakpoints;
    j["values"] = pc->values;
    j["label"] = strategy.label();
    return j.dump();
}

Strategy strategy_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw std::invalid_argument(std::string("strategy JSON parse error: ") + err.what());
    }
    try {
        if (!j.is_object() || j.value("type", "") != "piecewise") {
            throw std::invalid_argument("strategy JSON must be an object with type \"piecewise\"");
        }
        auto breakpoints = j.at("breakpoints").get<std::vector<double>>();
        auto values = j.at("values").get<std::vector<double>>();
        const std::string label = j.value("label", "");
        return make_piecewise(std::move(breakpoints), std::move(values), label);
    } catch (const nlohmann::json::exception& err) {
        throw std::invalid_argument(std::string("strategy JSON shape error: ") + err.what());
    }
}

std::string ensemble_to_json(const EnsembleStats& stats) {
    nlohmann::json j;
    j["mean_final_state"] = stats.mean_final_state;
    j["mean_reward_rate"] = stats.mean_reward_rate;
    j["std_error"] = stats.std_error;
    j["n_paths"] = stats.n_paths;
    return j.dump();
}

std::string split_to_json(const OccupationSplit& split) {
    nlohmann::json j;
    j["p_minus"] = split.p_minus;
    j["p_plus"] = split.p_plus;
    return j.dump();
}

std::string candidate_to_json(const HjbCandidate& candidate) {
    nlohmann::json j;
    j["c1"] = candidate.c1;
    j["c2"] = candidate.c2;
    j["c1_tilde"] = candidate.c1_tilde;
    j["c2_tilde"] = candidate.c2_tilde;
    j["x0"] = candidate.x0;
    j["r"] = candidate.r;
    return j.dump();
}

}  // namespace ergolab
