#pragma once

#include <cstdint>
#include <vector>

#include "ergolab/model.hpp"
#include "ergolab/strategy.hpp"

namespace ergolab {

/// One discretized sample path. Grid points are recorded every
/// `record_stride` steps; the final point is always present.
struct Trajectory {
    std::vector<double> times;            ///< strictly increasing, starts at 0
    std::vector<double> states;           ///< X at the recorded grid points
    std::vector<double> reward_integral;  ///< running left-endpoint value of ∫ a(X_s) ds
};

/// Scalar summaries of one path, cheap enough to keep for every ensemble
/// member even when the full trajectory would not fit in memory.
struct PathStats {
    double final_state = 0.0;
    /// Left-endpoint quadrature of ∫_0^T a(X_s) ds.
    double reward = 0.0;
    /// Trapezoid quadrature of the same integral. The two rules telescope:
    /// reward_trapezoid = reward + dt/2 * (a(X_N) - a(X_0)).
    double reward_trapezoid = 0.0;
    /// Running reward at the burn-in grid point, and that point's time.
    double reward_at_burn_in = 0.0;
    double burn_in_time = 0.0;
    /// Sum of the injected noise increments, i.e. the discrete W_T. Kept so
    /// identities with a known martingale part can cancel it path by path.
    double wiener_final = 0.0;
    /// Left-endpoint occupancy of the open half-line (x0, inf).
    double time_above_threshold = 0.0;
    /// N*dt actually simulated (horizon rounded to a whole number of steps).
    double horizon = 0.0;
    /// X at the requested checkpoint times, in order.
    std::vector<double> checkpoint_states;
};

/// What run_single_path samples along the way.
struct PathProbe {
    /// Strictly increasing times in [0, horizon]; each is rounded to the
    /// nearest grid point.
    std::vector<double> checkpoint_times;
    /// Fraction of the horizon treated as burn-in for tail averages.
    double burn_in_fraction = 0.1;
};

/// Monte Carlo summary of an ensemble. std_error refers to mean_reward_rate.
struct EnsembleStats {
    double mean_final_state = 0.0;
    double mean_reward_rate = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
};

void validate(const PathProbe& probe, const SimConfig& cfg);

/// Euler-Maruyama path: X_{k+1} = X_k + (mu - a(X_k)) dt + sqrt(dt) xi_k.
/// The reward integral uses the left-endpoint rule a(X_k) dt. Deterministic:
/// the same (params, strategy, cfg, path_index) give bit-identical output.
/// Throws SimulationError when |X| leaves [-blow_up_bound, blow_up_bound]
/// or turns non-finite, naming the step.
Trajectory simulate_path(const ModelParams& params, const Strategy& strategy,
                         const SimConfig& cfg, std::uint64_t path_index = 0);

/// Same dynamics, summary statistics only. O(1) memory in the step count.
PathStats run_single_path(const ModelParams& params, const Strategy& strategy,
                          const SimConfig& cfg, std::uint64_t path_index,
                          const PathProbe& probe = {});

/// cfg.n_paths independent paths with per-path sub-seeds (see rng.hpp for the
/// splitting rule). Results are independent of thread scheduling; parallelism
/// is capped by ERGOLAB_THREADS. Per-path failures are aggregated into one
/// SimulationError listing every failed path index.
std::vector<PathStats> run_paths(const ModelParams& params, const Strategy& strategy,
                                 const SimConfig& cfg, const PathProbe& probe = {});

/// Reduction of run_paths: mean final state, mean reward rate (full-window
/// reward / horizon, no burn-in) and its standard error.
EnsembleStats simulate_ensemble(const ModelParams& params, const Strategy& strategy,
                                const SimConfig& cfg);

/// Worker count for n_tasks independent tasks: hardware concurrency, capped
/// by the ERGOLAB_THREADS environment variable (unparseable values ignored),
/// never more than n_tasks, never less than 1.
unsigned resolve_thread_count(std::size_t n_tasks);

}  // namespace ergolab
