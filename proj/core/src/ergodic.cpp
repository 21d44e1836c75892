#include "ergolab/ergodic.hpp"

#include <cmath>
#include <stdexcept>

namespace ergolab {

namespace {

double tail_average_reward(const PathStats& path) {
    return (path.reward - path.reward_at_burn_in) / (path.horizon - path.burn_in_time);
}

void check_thresholds(const DiagnosticThresholds& thresholds) {
    if (!(thresholds.ergodic_below > 0.0) ||
        !(thresholds.transient_above > thresholds.ergodic_below)) {
        throw std::invalid_argument(
            "thresholds must satisfy 0 < ergodic_below < transient_above");
    }
}

RewardEstimate reward_from_paths(const std::vector<PathStats>& paths) {
    RewardEstimate est;
    est.n_paths = paths.size();
    est.horizon = paths.front().horizon;
    est.burn_in_time = paths.front().burn_in_time;

    double sum = 0.0;
    for (const PathStats& p : paths) sum += tail_average_reward(p);
    const auto n = static_cast<double>(paths.size());
    est.value = sum / n;
    if (paths.size() > 1) {
        double ss = 0.0;
        for (const PathStats& p : paths) {
            const double d = tail_average_reward(p) - est.value;
            ss += d * d;
        }
        est.std_error = std::sqrt(ss / (n * (n - 1.0)));
    }
    return est;
}

}  // namespace

std::string to_string(ErgodicVerdict verdict) {
    switch (verdict) {
        case ErgodicVerdict::ErgodicConsistent: return "ergodic-consistent";
        case ErgodicVerdict::TransientPositive: return "transient-positive";
        case ErgodicVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

RewardEstimate estimate_reward(const ModelParams& params, const Strategy& strategy,
                               const SimConfig& cfg, double burn_in_fraction) {
    PathProbe probe;
    probe.burn_in_fraction = burn_in_fraction;
    return reward_from_paths(run_paths(params, strategy, cfg, probe));
}

ErgodicVerdict classify_final_ratio(double final_ratio, const ModelParams& params,
                                    DiagnosticThresholds thresholds) {
    check_thresholds(thresholds);
    if (std::abs(final_ratio) < thresholds.ergodic_below * params.mu) {
        return ErgodicVerdict::ErgodicConsistent;
    }
    if (final_ratio > thresholds.transient_above * params.mu) {
        return ErgodicVerdict::TransientPositive;
    }
    return ErgodicVerdict::Inconclusive;
}

SweepCellResult evaluate_sweep_cell(const ModelParams& params, const Strategy& strategy,
                                    const SimConfig& cfg, double burn_in_fraction,
                                    DiagnosticThresholds thresholds) {
    check_thresholds(thresholds);
    PathProbe probe;
    probe.burn_in_fraction = burn_in_fraction;
    const std::vector<PathStats> paths = run_paths(params, strategy, cfg, probe);

    SweepCellResult cell;
    cell.reward = reward_from_paths(paths);
    double sum_state = 0.0;
    for (const PathStats& p : paths) sum_state += p.final_state;
    cell.final_ratio = sum_state / static_cast<double>(paths.size()) / cell.reward.horizon;
    cell.verdict = classify_final_ratio(cell.final_ratio, params, thresholds);
    return cell;
}

ErgodicityDiagnostic drift_diagnostic(const ModelParams& params, const Strategy& strategy,
                                      const SimConfig& cfg,
                                      const std::vector<double>& checkpoints,
                                      DiagnosticThresholds thresholds) {
    if (checkpoints.empty()) {
        throw std::invalid_argument("drift_diagnostic: checkpoints must be non-empty");
    }
    for (double t : checkpoints) {
        if (!(t > 0.0)) {
            throw std::invalid_argument("drift_diagnostic: checkpoint times must be positive");
        }
    }
    check_thresholds(thresholds);

    PathProbe probe;
    probe.checkpoint_times = checkpoints;
    const std::vector<PathStats> paths = run_paths(params, strategy, cfg, probe);

    ErgodicityDiagnostic diag;
    diag.ratio_curve.resize(checkpoints.size());
    const auto n = static_cast<double>(paths.size());
    for (std::size_t j = 0; j < checkpoints.size(); ++j) {
        double sum = 0.0;
        for (const PathStats& p : paths) sum += p.checkpoint_states[j];
        diag.ratio_curve[j] = {checkpoints[j], sum / n / checkpoints[j]};
    }

    diag.final_ratio = diag.ratio_curve.back().ratio;
    diag.verdict = classify_final_ratio(diag.final_ratio, params, thresholds);
    return diag;
}

double lln_crosscheck(const ModelParams& params, const Strategy& strategy, const SimConfig& cfg,
                      const PiecewiseExpDensity& density, double burn_in_fraction) {
    const double space_average = stationary_reward(density, strategy);
    PathProbe probe;
    probe.burn_in_fraction = burn_in_fraction;
    const PathStats path = run_single_path(params, strategy, cfg, 0, probe);
    return std::abs(tail_average_reward(path) - space_average);
}

DriftIdentityCheck check_drift_identity(const ModelParams& params, const Strategy& strategy,
                                        const SimConfig& cfg) {
    const std::vector<PathStats> paths = run_paths(params, strategy, cfg);

    DriftIdentityCheck check;
    double inc = 0.0;
    double quad = 0.0;
    for (const PathStats& p : paths) {
        inc += p.final_state - cfg.x_init - p.wiener_final;
        quad += params.mu * p.horizon - p.reward_trapezoid;
    }
    const auto n = static_cast<double>(paths.size());
    check.increment_side = inc / n;
    check.quadrature_side = quad / n;
    check.residual = std::abs(check.increment_side - check.quadrature_side);
    check.quadrature_bound = cfg.dt * params.cap / 2.0;
    return check;
}

}  // namespace ergolab
