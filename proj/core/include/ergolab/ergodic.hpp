#pragma once

#include <string>
#include <vector>

#include "ergolab/model.hpp"
#include "ergolab/simulate.hpp"
#include "ergolab/stationary.hpp"
#include "ergolab/strategy.hpp"

namespace ergolab {

/// Finite-horizon classification of the long-run behavior of E X_t / t.
/// The defining condition is a limit, so a desk-scale run can only report
/// consistency with it, never prove it.
enum class ErgodicVerdict { ErgodicConsistent, TransientPositive, Inconclusive };

std::string to_string(ErgodicVerdict verdict);

/// Monte Carlo estimate of the long-run average reward
/// (1/T) E ∫ a(X_s) ds, computed on the post-burn-in window.
struct RewardEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double horizon = 0.0;
    double burn_in_time = 0.0;
    std::size_t n_paths = 0;
};

struct RatioPoint {
    double t = 0.0;
    double ratio = 0.0;  ///< ensemble mean of X_t / t
};

/// Cutoffs for the verdict, as fractions of mu: |final ratio| below the
/// first is ergodic-consistent, above the second is transient-positive,
/// between them inconclusive.
struct DiagnosticThresholds {
    double ergodic_below = 0.02;
    double transient_above = 0.2;
};

struct ErgodicityDiagnostic {
    std::vector<RatioPoint> ratio_curve;
    ErgodicVerdict verdict = ErgodicVerdict::Inconclusive;
    double final_ratio = 0.0;
};

/// Both sides of the pathwise drift identity
///   X_T - x - W_T = ∫ (mu - a(X_s)) ds,
/// ensemble-averaged over shared noise realizations. The Brownian sum is
/// known exactly per path and subtracted, so the residual is pure
/// quadrature: the left endpoint rule on the left side vs the trapezoid
/// rule on the right differ by dt/2 * (a(X_T) - a(X_0)) per path, hence
/// |residual| <= quadrature_bound = dt * cap / 2, shrinking linearly in dt.
struct DriftIdentityCheck {
    double increment_side = 0.0;
    double quadrature_side = 0.0;
    double residual = 0.0;
    double quadrature_bound = 0.0;
};

/// One parameter-sweep cell: reward estimate and verdict from a single
/// ensemble (the verdict classifies mean X_T / T).
struct SweepCellResult {
    RewardEstimate reward;
    double final_ratio = 0.0;
    ErgodicVerdict verdict = ErgodicVerdict::Inconclusive;
};

/// Ensemble mean and standard error of the per-path time-average reward over
/// [burn_in * T, T]. burn_in_fraction = 0 gives the plain full-window average.
RewardEstimate estimate_reward(const ModelParams& params, const Strategy& strategy,
                               const SimConfig& cfg, double burn_in_fraction = 0.1);

/// The verdict rule shared by all diagnostics: |ratio| below
/// ergodic_below * mu is ergodic-consistent, ratio above transient_above * mu
/// is transient-positive, anything else inconclusive.
ErgodicVerdict classify_final_ratio(double final_ratio, const ModelParams& params,
                                    DiagnosticThresholds thresholds = {});

SweepCellResult evaluate_sweep_cell(const ModelParams& params, const Strategy& strategy,
                                    const SimConfig& cfg, double burn_in_fraction = 0.1,
                                    DiagnosticThresholds thresholds = {});

/// Ensemble estimate of E X_t / t at the given checkpoint times (strictly
/// increasing, in (0, horizon]), classified by the thresholds.
ErgodicityDiagnostic drift_diagnostic(const ModelParams& params, const Strategy& strategy,
                                      const SimConfig& cfg,
                                      const std::vector<double>& checkpoints,
                                      DiagnosticThresholds thresholds = {});

/// |single-path time-average reward - stationary reward of the density|.
/// Uses one path (path index 0) regardless of cfg.n_paths: the underlying
/// statement is almost-sure, not in expectation. The density must match the
/// strategy that generated it.
double lln_crosscheck(const ModelParams& params, const Strategy& strategy, const SimConfig& cfg,
                      const PiecewiseExpDensity& density, double burn_in_fraction = 0.1);

/// Runs cfg.n_paths paths and evaluates both sides of the drift identity on
/// the same realizations. See DriftIdentityCheck for why the residual is a
/// deterministic quadrature gap rather than Monte Carlo noise.
DriftIdentityCheck check_drift_identity(const ModelParams& params, const Strategy& strategy,
                                        const SimConfig& cfg);

}  // namespace ergolab
