#include "ergolab/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ergolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ThresholdFamily {
    double threshold;
    double rate;
};

// The closed form covers exactly a(x) = rate * 1(x > threshold).
ThresholdFamily extract_threshold_family(const Strategy& strategy) {
    const auto* pc = strategy.piecewise_form();
    if (pc == nullptr || pc->breakpoints.size() != 1 || pc->values[0] != 0.0) {
        throw std::invalid_argument(
            "closed-form density requires a two-piece threshold strategy "
            "a(x) = rate * 1(x > x0); got '" + strategy.label() + "'");
    }
    return {pc->breakpoints[0], pc->values[1]};
}

void require_ergodic_rate(double rate, double mu) {
    if (!(rate > mu)) {
        std::ostringstream msg;
        msg << "withdraw rate " << rate << " does not exceed mu = " << mu
            << "; the process is transient and has no invariant probability";
        throw std::invalid_argument(msg.str());
    }
}

// Thomas algorithm. The caller's system is made nonsingular by an anchor row;
// the pivot guard is defensive.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> super, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double pivot = diag[i - 1];
        if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) {
            throw std::runtime_error("stationary solve: singular tridiagonal system at row " +
                                     std::to_string(i - 1));
        }
        const double w = sub[i] / pivot;
        diag[i] -= w * super[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (!(std::abs(diag[n - 1]) > 0.0) || !std::isfinite(diag[n - 1])) {
        throw std::runtime_error("stationary solve: singular tridiagonal system at row " +
                                 std::to_string(n - 1));
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = (rhs[i] - super[i] * x[i + 1]) / diag[i];
    }
    return x;
}

double resolve_anchor(const ModelParams& params, const Strategy& strategy) {
    if (const auto* pc = strategy.piecewise_form(); pc != nullptr && pc->breakpoints.size() == 1) {
        return pc->breakpoints[0];
    }
    return params.x0;
}

}  // namespace

double PiecewiseExpDensity::evaluate(double x) const {
    for (const ExpSegment& seg : segments) {
        if (x > seg.lower && x <= seg.upper) {
            return seg.amplitude * std::exp(seg.rate * (x - anchor));
        }
    }
    return 0.0;
}

double PiecewiseExpDensity::mass(double lo, double hi) const {
    if (!(lo < hi)) return 0.0;
    double total = 0.0;
    for (const ExpSegment& seg : segments) {
        const double a = std::max(lo, seg.lower);
        const double b = std::min(hi, seg.upper);
        if (!(a < b)) continue;
        // Antiderivative of A e^{r(x - anchor)} is (A/r) e^{r(x - anchor)};
        // IEEE exp(-inf) = 0 handles the unbounded ends.
        total += seg.amplitude / seg.rate *
                 (std::exp(seg.rate * (b - anchor)) - std::exp(seg.rate * (a - anchor)));
    }
    return total;
}

double PiecewiseExpDensity::total_mass() const { return mass(-kInf, kInf); }

PiecewiseExpDensity closed_form_density(const ModelParams& params, const Strategy& strategy,
                                        RateConvention convention) {
    validate(params);
    require_admissible(strategy, params);
    const ThresholdFamily family = extract_threshold_family(strategy);
    require_ergodic_rate(family.rate, params.mu);

    const double scale = convention == RateConvention::SdeConsistent ? 2.0 : 1.0;
    PiecewiseExpDensity density;
    density.anchor = family.threshold;
    density.decay_left = scale * params.mu;
    density.decay_right = scale * (family.rate - params.mu);
    // Unit mass: p(x0) * (1/decay_left + 1/decay_right) = 1.
    density.p_at_anchor =
        density.decay_left * density.decay_right / (density.decay_left + density.decay_right);
    density.convention = convention;
    density.mu = params.mu;
    density.withdraw_rate = family.rate;
    density.segments = {
        {-kInf, density.anchor, density.p_at_anchor, density.decay_left},
        {density.anchor, kInf, density.p_at_anchor, -density.decay_right},
    };
    return density;
}

OccupationSplit occupation_probabilities(const PiecewiseExpDensity& density) {
    // p_plus = p(anchor)/decay_right; with the unit-mass anchor value this is
    // the rate ratio below, which commits fewer roundings.
    const double sum = density.decay_left + density.decay_right;
    return {density.decay_right / sum, density.decay_left / sum};
}

OccupationSplit occupation_probabilities(const GridDensity& density, double split_point) {
    OccupationSplit split;
    for (std::size_t i = 0; i < density.grid.size(); ++i) {
        const double cell_mass = density.values[i] * density.cell_width;
        if (density.grid[i] <= split_point) {
            split.p_minus += cell_mass;
        } else {
            split.p_plus += cell_mass;
        }
    }
    return split;
}

double stationary_reward(const PiecewiseExpDensity& density, const Strategy& strategy) {
    const auto* pc = strategy.piecewise_form();
    const bool matches = pc != nullptr && pc->breakpoints.size() == 1 &&
                         pc->breakpoints[0] == density.anchor && pc->values[0] == 0.0 &&
                         pc->values[1] == density.withdraw_rate;
    if (!matches) {
        throw std::invalid_argument("stationary_reward: strategy '" + strategy.label() +
                                    "' does not match the density's generating strategy");
    }
    return density.withdraw_rate * occupation_probabilities(density).p_plus;
}

double suggested_half_width(const ModelParams& params, const Strategy& strategy) {
    validate(params);
    const auto* pc = strategy.piecewise_form();
    if (pc == nullptr || !(pc->values.back() > params.mu)) {
        throw std::invalid_argument(
            "suggested_half_width needs a piecewise strategy whose rightmost rate exceeds mu");
    }
    const double decay_left = 2.0 * params.mu;
    const double decay_right = 2.0 * (pc->values.back() - params.mu);
    const double anchor = resolve_anchor(params, strategy);
    double spread = 0.0;
    for (double b : pc->breakpoints) spread = std::max(spread, std::abs(b - anchor));
    return 40.0 / std::min(decay_left, decay_right) + spread;
}

GridDensity solve_fokker_planck(const ModelParams& params, const Strategy& strategy,
                                double half_width, std::size_t n_cells) {
    validate(params);
    require_admissible(strategy, params);
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("solve_fokker_planck: half_width must be positive and finite");
    }
    if (n_cells < 8 || n_cells % 2 != 0) {
        throw std::invalid_argument("solve_fokker_planck: n_cells must be even and >= 8");
    }

    const double anchor = resolve_anchor(params, strategy);
    const double lo = anchor - half_width;
    const double h = 2.0 * half_width / static_cast<double>(n_cells);

    // Drift at cell centers; faces take the average of the two neighbors, so
    // a jump of a(.) sitting on a face is split evenly, which keeps the
    // left/right exponential match second-order accurate across it.
    std::vector<double> drift(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i) {
        const double center = lo + (static_cast<double>(i) + 0.5) * h;
        drift[i] = params.mu - evaluate(strategy, center);
    }

    // Tail decay rates at the edges; both tails must vanish on the domain.
    const double decay_left = 2.0 * drift.front();
    const double decay_right = -2.0 * drift.back();
    if (!(decay_left > 0.0) || !(decay_right > 0.0)) {
        throw std::invalid_argument(
            "solve_fokker_planck: strategy is not of ergodic form "
            "(drift must point inward at both domain edges)");
    }
    if (std::exp(-decay_left * half_width) >= 1e-10 ||
        std::exp(-decay_right * half_width) >= 1e-10) {
        throw std::invalid_argument(
            "solve_fokker_planck: half_width too small, boundary mass would exceed 1e-10");
    }

    double max_face_drift = 0.0;
    for (std::size_t j = 1; j < n_cells; ++j) {
        max_face_drift = std::max(max_face_drift, std::abs(drift[j - 1] + drift[j]) / 2.0);
    }
    if (!(h * max_face_drift < 0.5)) {
        throw std::invalid_argument(
            "solve_fokker_planck: cell width too large relative to the drift; increase n_cells");
    }

    // Zero-flux finite volume: J_j = b_j (p_{j-1}+p_j)/2 - (p_j - p_{j-1})/(2h)
    // at interior faces, J = 0 at the boundary faces; each row is the flux
    // difference across one cell. The system fixes p only up to scale, so the
    // anchor cell's row is replaced by p = 1 and mass is normalized afterwards.
    const double inv2h = 1.0 / (2.0 * h);
    std::vector<double> sub(n_cells, 0.0);
    std::vector<double> diag(n_cells, 0.0);
    std::vector<double> super(n_cells, 0.0);
    std::vector<double> rhs(n_cells, 0.0);
    for (std::size_t i = 0; i < n_cells; ++i) {
        if (i > 0) {
            const double face = (drift[i - 1] + drift[i]) / 2.0;  // face i
            sub[i] = -face / 2.0 - inv2h;
            diag[i] += -face / 2.0 + inv2h;
        }
        if (i + 1 < n_cells) {
            const double face = (drift[i] + drift[i + 1]) / 2.0;  // face i+1
            diag[i] += face / 2.0 + inv2h;
            super[i] = face / 2.0 - inv2h;
        }
    }
    const std::size_t anchor_cell = n_cells / 2;
    sub[anchor_cell] = 0.0;
    diag[anchor_cell] = 1.0;
    super[anchor_cell] = 0.0;
    rhs[anchor_cell] = 1.0;

    std::vector<double> p =
        solve_tridiagonal(std::move(sub), std::move(diag), std::move(super), std::move(rhs));

    double mass = 0.0;
    for (double v : p) {
        if (!(v > 0.0)) {
            throw std::runtime_error("solve_fokker_planck: non-positive density cell");
        }
        mass += v * h;
    }
    for (double& v : p) v /= mass;

    if ((p.front() + p.back()) * h >= 1e-8) {
        throw std::runtime_error("solve_fokker_planck: boundary mass above tolerance");
    }

    GridDensity out;
    out.values = std::move(p);
    out.cell_width = h;
    out.anchor = anchor;
    out.grid.resize(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i) {
        out.grid[i] = lo + (static_cast<double>(i) + 0.5) * h;
    }
    return out;
}

double l1_distance(const GridDensity& numeric, const PiecewiseExpDensity& closed_form) {
    double sum = 0.0;
    for (std::size_t i = 0; i < numeric.grid.size(); ++i) {
        sum += std::abs(numeric.values[i] - closed_form.evaluate(numeric.grid[i])) *
               numeric.cell_width;
    }
    return sum;
}

}  // namespace ergolab
