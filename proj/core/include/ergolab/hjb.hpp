#pragma once

#include <span>
#include <string>
#include <vector>

#include "ergolab/model.hpp"

namespace ergolab {

/// Candidate solution (V, r) of the long-run-average optimality equation
///
///   sup_{a in [0, cap]} [ (mu - a) V'(x) + ½ V''(x) + a - r ] = 0,
///
/// built from the regional ODE solutions
///   V(x) = c1 + c2 e^{-mu x} + (r/mu) x                     for x < x0,
///   V(x) = c1_tilde + c2_tilde e^{(cap-mu) x}
///          + ((r - cap)/(mu - cap)) x                       for x > x0.
struct HjbCandidate {
    double c1 = 0.0;
    double c2 = 0.0;
    double c1_tilde = 0.0;
    double c2_tilde = 0.0;
    double r = 0.0;
    double x0 = 0.0;
};

/// Which regional expression to read; at x = x0 both are meaningful
/// (one-sided limits).
enum class Side { Left, Right };

/// Value and first two derivatives of the candidate at x.
struct CandidateJet {
    double value = 0.0;
    double first = 0.0;
    double second = 0.0;
};

/// The action set attaining the supremum of a (1 - V'(x)) over [0, cap],
/// by the sign trichotomy of 1 - V'.
enum class ActionSet { ZeroOnly, CapOnly, FullInterval };

std::string to_string(ActionSet action);

struct ArgsupPoint {
    double x = 0.0;
    ActionSet action = ActionSet::FullInterval;
};

struct ArgsupStructure {
    std::vector<ArgsupPoint> points;
};

struct PastingResult {
    HjbCandidate candidate;
    /// True when both exponential modes vanish (c2 = c2_tilde = 0), i.e. the
    /// candidate grows at most linearly. False is a report, not an error:
    /// the requested r admits no polynomially growing solution.
    bool polynomial_growth = false;
};

CandidateJet evaluate_candidate(const HjbCandidate& candidate, const ModelParams& params,
                                double x, Side side);

/// The sup over a in [0, cap] of the bracket, given V' and V'' at a point.
/// The bracket is affine in a with slope (1 - V'), so
///   sup = mu V' + ½ V'' - r + cap * max(0, 1 - V').
double hjb_supremum(double v_prime, double v_second, const ModelParams& params, double r);

/// {0} when V' > 1, {cap} when V' < 1, [0, cap] when V' = 1.
ActionSet classify_action(double v_prime);

/// Equation residual at x. Away from x0 the containing side is used; at
/// x = x0 both one-sided residuals are computed and the one larger in
/// magnitude is returned (use the Side overload to read each individually).
double hjb_residual(const HjbCandidate& candidate, const ModelParams& params, double x);
double hjb_residual(const HjbCandidate& candidate, const ModelParams& params, double x,
                    Side side);

/// Classifies each probe point by the sign of 1 - V'. At x = x0 the left
/// derivative is used.
ArgsupStructure argsup_structure(const HjbCandidate& candidate, const ModelParams& params,
                                 std::span<const double> probe_grid);

/// Builds the candidate for a given r: the selection condition V'(x0-) = 1
/// fixes c2, continuity of V' at x0 fixes c2_tilde, the gauge choice c1 = 0
/// and continuity of V fix the rest. For r = mu both exponential modes
/// vanish identically and V(x) = x up to the gauge constant; any other r
/// leaves a nonzero mode, reported via polynomial_growth = false.
PastingResult solve_pasting(const ModelParams& params, double r, double x0);

/// max |hjb_residual| over a non-empty grid.
double verify_candidate_on_grid(const HjbCandidate& candidate, const ModelParams& params,
                                std::span<const double> grid);

}  // namespace ergolab
