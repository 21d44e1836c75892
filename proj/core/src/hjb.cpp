#include "ergolab/hjb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ergolab {

namespace {

// c * e^t without evaluating the exponential when c = 0, so candidates with
// a suppressed mode stay exact (and finite) on arbitrarily wide grids.
double scaled_exp(double c, double t) { return c == 0.0 ? 0.0 : c * std::exp(t); }

}  // namespace

std::string to_string(ActionSet action) {
    switch (action) {
        case ActionSet::ZeroOnly: return "zero-only";
        case ActionSet::CapOnly: return "cap-only";
        case ActionSet::FullInterval: return "full-interval";
    }
    return "full-interval";
}

CandidateJet evaluate_candidate(const HjbCandidate& candidate, const ModelParams& params,
                                double x, Side side) {
    CandidateJet jet;
    if (side == Side::Left) {
        const double mu = params.mu;
        const double e = scaled_exp(candidate.c2, -mu * x);
        jet.value = candidate.c1 + e + (candidate.r / mu) * x;
        jet.first = -mu * e + candidate.r / mu;
        jet.second = mu * mu * e;
    } else {
        const double k = params.cap - params.mu;
        const double slope = (candidate.r - params.cap) / (params.mu - params.cap);
        const double e = scaled_exp(candidate.c2_tilde, k * x);
        jet.value = candidate.c1_tilde + e + slope * x;
        jet.first = k * e + slope;
        jet.second = k * k * e;
    }
    return jet;
}

double hjb_supremum(double v_prime, double v_second, const ModelParams& params, double r) {
    return params.mu * v_prime + 0.5 * v_second - r +
           params.cap * std::max(0.0, 1.0 - v_prime);
}

ActionSet classify_action(double v_prime) {
    if (v_prime > 1.0) return ActionSet::ZeroOnly;
    if (v_prime < 1.0) return ActionSet::CapOnly;
    return ActionSet::FullInterval;
}

double hjb_residual(const HjbCandidate& candidate, const ModelParams& params, double x,
                    Side side) {
    const CandidateJet jet = evaluate_candidate(candidate, params, x, side);
    return hjb_supremum(jet.first, jet.second, params, candidate.r);
}

double hjb_residual(const HjbCandidate& candidate, const ModelParams& params, double x) {
    if (x < candidate.x0) return hjb_residual(candidate, params, x, Side::Left);
    if (x > candidate.x0) return hjb_residual(candidate, params, x, Side::Right);
    const double left = hjb_residual(candidate, params, x, Side::Left);
    const double right = hjb_residual(candidate, params, x, Side::Right);
    return std::abs(left) >= std::abs(right) ? left : right;
}

ArgsupStructure argsup_structure(const HjbCandidate& candidate, const ModelParams& params,
                                 std::span<const double> probe_grid) {
    ArgsupStructure structure;
    structure.points.reserve(probe_grid.size());
    for (double x : probe_grid) {
        const Side side = x <= candidate.x0 ? Side::Left : Side::Right;
        const CandidateJet jet = evaluate_candidate(candidate, params, x, side);
        structure.points.push_back({x, classify_action(jet.first)});
    }
    return structure;
}

PastingResult solve_pasting(const ModelParams& params, double r, double x0) {
    validate(params);
    if (!std::isfinite(r)) {
        throw std::invalid_argument("solve_pasting: r must be finite");
    }
    if (!(x0 >= 0.0) || !std::isfinite(x0)) {
        throw std::invalid_argument("solve_pasting: x0 must be >= 0 and finite");
    }
    const double mu = params.mu;
    const double cap = params.cap;

    PastingResult result;
    HjbCandidate& c = result.candidate;
    c.r = r;
    c.x0 = x0;
    // V'(x0-) = -mu c2 e^{-mu x0} + r/mu = 1.
    c.c2 = (r / mu - 1.0) * std::exp(mu * x0) / mu;
    // V'(x0+) = (cap-mu) c2_tilde e^{(cap-mu) x0} + (r-cap)/(mu-cap) = 1.
    const double right_slope = (r - cap) / (mu - cap);
    c.c2_tilde = (1.0 - right_slope) * std::exp(-(cap - mu) * x0) / (cap - mu);
    // Gauge: c1 = 0; then V(x0-) = V(x0+) fixes c1_tilde.
    c.c1 = 0.0;
    c.c1_tilde = c.c1 + scaled_exp(c.c2, -mu * x0) + (r / mu) * x0 -
                 scaled_exp(c.c2_tilde, (cap - mu) * x0) - right_slope * x0;

    result.polynomial_growth = c.c2 == 0.0 && c.c2_tilde == 0.0;
    return result;
}

double verify_candidate_on_grid(const HjbCandidate& candidate, const ModelParams& params,
                                std::span<const double> grid) {
    if (grid.empty()) {
        throw std::invalid_argument("verify_candidate_on_grid: grid must be non-empty");
    }
    double worst = 0.0;
    for (double x : grid) {
        worst = std::max(worst, std::abs(hjb_residual(candidate, params, x)));
    }
    return worst;
}

}  // namespace ergolab
