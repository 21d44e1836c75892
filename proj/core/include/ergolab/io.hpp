#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ergolab/ergodic.hpp"
#include "ergolab/hjb.hpp"
#include "ergolab/simulate.hpp"
#include "ergolab/stationary.hpp"
#include "ergolab/strategy.hpp"

namespace ergolab {

/// Shortest round-trip decimal form of v; parsing it back recovers the exact
/// bits. All CSV and JSON output goes through this, so identical data means
/// byte-identical files.
std::string format_number(double v);

// CSV writers. Every file gets a header row; column order is part of the
// contract (consumed by external plotting, not by this library).

/// Columns: t,x,reward_integral
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

/// Columns: x,p
void write_density_csv(std::ostream& os, const GridDensity& density);
void write_density_csv(std::ostream& os, const PiecewiseExpDensity& density,
                       std::span<const double> grid);

/// Columns: t,ratio
void write_ratio_curve_csv(std::ostream& os, const std::vector<RatioPoint>& curve);

/// Columns: x,residual
void write_residual_csv(std::ostream& os, std::span<const double> xs,
                        std::span<const double> residuals);

/// One parameter-sweep row; `verdict` is free text (a verdict name, or an
/// error note for a failed cell).
struct SweepRow {
    double c = 0.0;
    double x0 = 0.0;
    double reward_estimate = 0.0;
    double std_error = 0.0;
    std::string verdict;
};

/// Columns: c,x0,reward_estimate,std_error,verdict
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// JSON round trips. Key order is deterministic (sorted), numbers are
// shortest-round-trip, so serialization is reproducible byte for byte.

/// {"type":"piecewise","breakpoints":[...],"values":[...],"label":"..."}.
/// Only piecewise strategies have a JSON form; general callables are
/// rejected.
std::string strategy_to_json(const Strategy& strategy);
Strategy strategy_from_json(const std::string& text);

/// Flat object: mean_final_state, mean_reward_rate, std_error, n_paths.
std::string ensemble_to_json(const EnsembleStats& stats);

std::string split_to_json(const OccupationSplit& split);

/// Flat object: c1, c2, c1_tilde, c2_tilde, x0, r.
std::string candidate_to_json(const HjbCandidate& candidate);

}  // namespace ergolab
