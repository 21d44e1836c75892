#pragma once

#include <cstddef>
#include <vector>

#include "ergolab/model.hpp"
#include "ergolab/strategy.hpp"

namespace ergolab {

/// Exponent convention for the closed-form invariant density of the
/// threshold family a(x) = rate * 1(x > x0).
///
/// With unit diffusion (noise dW, generator with ½ d²/dx²), the stationarity
/// equation ½p'' - (bp)' = 0 makes the density decay at rate 2|b| on each
/// constant-drift piece; that is SdeConsistent. Some derivations carry the
/// same shapes with all exponents halved to |b| (equivalently, generator
/// d²/dx², diffusion coefficient sqrt(2)); that is Halved. Quantities that
/// depend only on rate ratios (occupation split, stationary reward) are
/// identical in both conventions.
enum class RateConvention { SdeConsistent, Halved };

/// p(x) = amplitude * exp(rate * (x - anchor)) on (lower, upper].
struct ExpSegment {
    double lower;
    double upper;
    double amplitude;
    double rate;
};

/// Closed-form invariant density: exponential growth toward the anchor from
/// the left at rate decay_left, decay away from it at decay_right.
struct PiecewiseExpDensity {
    std::vector<ExpSegment> segments;
    double anchor = 0.0;
    double p_at_anchor = 0.0;
    double decay_left = 0.0;   ///< exponent magnitude on (-inf, anchor]
    double decay_right = 0.0;  ///< exponent magnitude on (anchor, inf)
    RateConvention convention = RateConvention::SdeConsistent;
    // Generating model and strategy facts, kept so dependent computations can
    // verify they are handed the matching strategy.
    double mu = 0.0;
    double withdraw_rate = 0.0;

    double evaluate(double x) const;
    /// Exact integral of the density over (lo, hi); infinities allowed.
    double mass(double lo, double hi) const;
    double total_mass() const;
};

/// Stationary probability mass left/right of the anchor.
struct OccupationSplit {
    double p_minus = 0.0;  ///< mass on (-inf, anchor]
    double p_plus = 0.0;   ///< mass on (anchor, inf)
};

/// Numerical density on uniform cells covering [anchor - L, anchor + L].
struct GridDensity {
    std::vector<double> grid;    ///< cell centers
    std::vector<double> values;  ///< density per cell, unit total mass
    double cell_width = 0.0;
    double anchor = 0.0;
};

/// Invariant density of dX = (mu - a(X)) dt + dW for the two-piece family
/// a(x) = rate * 1(x > x0) with mu < rate <= cap. Rejects any other shape:
/// rate <= mu is transient (no invariant probability), rate > cap is
/// inadmissible.
PiecewiseExpDensity closed_form_density(const ModelParams& params, const Strategy& strategy,
                                        RateConvention convention = RateConvention::SdeConsistent);

/// p_plus = p(anchor)/decay_right = decay_left/(decay_left + decay_right),
/// and p_minus the complement. Exact in closed form.
OccupationSplit occupation_probabilities(const PiecewiseExpDensity& density);

/// Cell-mass split of a numerical density by cell-center position.
OccupationSplit occupation_probabilities(const GridDensity& density, double split_point);

/// Stationary expectation of the withdrawal rate, ∫ a(y) p(y) dy =
/// withdraw_rate * p_plus. For the supported family this equals mu: whatever
/// is taken out above the threshold, weighted by the time spent there, must
/// balance what flows in. Rejects a strategy that does not match the
/// density's generating one.
double stationary_reward(const PiecewiseExpDensity& density, const Strategy& strategy);

/// Default truncation half-width: 40 / (slowest tail decay rate).
double suggested_half_width(const ModelParams& params, const Strategy& strategy);

/// Independent numerical oracle: solves ½p'' - (bp)' = 0 on
/// [anchor - half_width, anchor + half_width] with zero-flux boundaries via
/// a conservative finite-volume discretization (tridiagonal solve), then
/// normalizes to unit mass. n_cells must be even so the anchor lands on a
/// cell face. Requires exp(-decay * half_width) < 1e-10 for both tails.
GridDensity solve_fokker_planck(const ModelParams& params, const Strategy& strategy,
                                double half_width, std::size_t n_cells);

/// Sum over cells of |numeric - closed_form at the cell center| * cell_width.
double l1_distance(const GridDensity& numeric, const PiecewiseExpDensity& closed_form);

}  // namespace ergolab
