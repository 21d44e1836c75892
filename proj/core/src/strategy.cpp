#include "ergolab/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ergolab {

namespace {

std::string format_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

Strategy make_threshold(const ModelParams& params, double rate, double threshold) {
    validate(params);
    if (!(rate >= 0.0) || !(rate <= params.cap)) {
        throw std::invalid_argument("make_threshold: rate must lie in [0, cap]");
    }
    if (!(threshold >= 0.0)) {
        // A negative threshold would withdraw on (threshold, 0].
        throw std::invalid_argument("make_threshold: threshold must be >= 0");
    }
    PiecewiseConstant pc{{threshold}, {0.0, rate}};
    std::string label = "threshold(rate=" + format_number(rate) +
                        ",x0=" + format_number(threshold) + ")";
    return Strategy(std::move(pc), std::move(label));
}

Strategy make_piecewise(std::vector<double> breakpoints, std::vector<double> values,
                        std::string label) {
    if (values.size() != breakpoints.size() + 1) {
        throw std::invalid_argument(
            "make_piecewise: need exactly one more value than breakpoints");
    }
    if (std::adjacent_find(breakpoints.begin(), breakpoints.end(),
                           [](double a, double b) { return !(a < b); }) != breakpoints.end()) {
        throw std::invalid_argument("make_piecewise: breakpoints must be strictly increasing");
    }
    for (double b : breakpoints) {
        if (!std::isfinite(b)) throw std::invalid_argument("make_piecewise: non-finite breakpoint");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("make_piecewise: non-finite value");
    }
    if (label.empty()) {
        label = "piecewise(" + std::to_string(breakpoints.size() + 1) + " pieces)";
    }
    return Strategy(PiecewiseConstant{std::move(breakpoints), std::move(values)},
                    std::move(label));
}

Strategy make_general(Strategy::GeneralFn fn, std::string label) {
    if (!fn) throw std::invalid_argument("make_general: empty callable");
    return Strategy(std::move(fn), std::move(label));
}

namespace {

void check_point(double a, double x, double cap, std::vector<Violation>& out) {
    if (x <= 0.0 && a != 0.0) {
        out.push_back({x, "a(x) must be 0 for x <= 0"});
        return;
    }
    if (a < 0.0) out.push_back({x, "a(x) must be >= 0"});
    if (a > cap) out.push_back({x, "a(x) must be <= cap"});
}

}  // namespace

AdmissibilityReport validate(const Strategy& strategy, const ModelParams& params,
                             std::span<const double> probe_grid) {
    AdmissibilityReport report;
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (const auto* pc = strategy.piecewise_form()) {
        report.note = "exact piece-by-piece check";
        const auto& breaks = pc->breakpoints;
        const auto& values = pc->values;
        for (std::size_t i = 0; i < values.size(); ++i) {
            // Piece i covers (lo, hi].
            const double lo = i > 0 ? breaks[i - 1] : -inf;
            const double hi = i < breaks.size() ? breaks[i] : inf;
            const double v = values[i];
            // A witness strictly inside the piece.
            double witness;
            if (lo == -inf) {
                witness = std::min(-1.0, hi - 1.0);
            } else if (hi == inf) {
                witness = lo + 1.0;
            } else {
                witness = (lo + hi) / 2.0;
            }
            if (lo < 0.0 && v != 0.0) {
                // The piece reaches into x <= 0, where withdrawals are banned.
                const double neg_witness = lo == -inf ? std::min(-1.0, hi - 1.0)
                                                      : (lo + std::min(hi, 0.0)) / 2.0;
                report.violations.push_back({neg_witness, "a(x) must be 0 for x <= 0"});
                continue;
            }
            if (v < 0.0) report.violations.push_back({witness, "a(x) must be >= 0"});
            if (v > params.cap) report.violations.push_back({witness, "a(x) must be <= cap"});
        }
    } else {
        if (probe_grid.empty()) {
            throw std::invalid_argument("validate: probe grid must be non-empty for general strategies");
        }
        report.note = "sampled on " + std::to_string(probe_grid.size()) + " grid points";
        for (double x : probe_grid) {
            check_point(strategy(x), x, params.cap, report.violations);
        }
    }
    report.admissible = report.violations.empty();
    return report;
}

std::vector<double> default_probe_grid(const ModelParams& params) {
    const double lo = std::min(-10.0, params.x0 - 10.0);
    const double hi = std::max(10.0, params.x0 + 10.0);
    const std::size_t n = 2001;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    grid.push_back(0.0);
    grid.push_back(params.x0);
    std::sort(grid.begin(), grid.end());
    return grid;
}

void require_admissible(const Strategy& strategy, const ModelParams& params) {
    const auto grid = default_probe_grid(params);
    const auto report = validate(strategy, params, grid);
    if (!report.admissible) {
        const auto& first = report.violations.front();
        throw std::invalid_argument("strategy '" + strategy.label() + "' is not admissible: " +
                                    first.rule + " (x = " + std::to_string(first.x) + ")");
    }
}

}  // namespace ergolab
