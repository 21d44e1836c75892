#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ergolab/model.hpp"

namespace ergolab {

/// Step function a(x). `values` has one more entry than `breakpoints`;
/// piece i applies on (breakpoints[i-1], breakpoints[i]], so the value at a
/// breakpoint b comes from the piece to its left and a threshold strategy
/// rate*1(x > b) is exactly zero at x = b.
struct PiecewiseConstant {
    std::vector<double> breakpoints;  ///< strictly increasing
    std::vector<double> values;       ///< size = breakpoints.size() + 1

    double operator()(double x) const {
        std::size_t i = 0;
        while (i < breakpoints.size() && x > breakpoints[i]) ++i;
        return values[i];
    }
};

/// A withdrawal strategy: either a piecewise-constant step function or an
/// arbitrary callable. Immutable after construction; cheap to copy and safe
/// to evaluate concurrently.
class Strategy {
public:
    using GeneralFn = std::function<double(double)>;

    Strategy(PiecewiseConstant pieces, std::string label)
        : repr_(std::move(pieces)), label_(std::move(label)) {
        const auto& pc = std::get<PiecewiseConstant>(repr_);
        if (pc.values.size() != pc.breakpoints.size() + 1) {
            throw std::invalid_argument(
                "PiecewiseConstant: values must have breakpoints.size() + 1 entries");
        }
    }
    Strategy(GeneralFn fn, std::string label)
        : repr_(std::move(fn)), label_(std::move(label)) {}

    double operator()(double x) const {
        if (const auto* pc = std::get_if<PiecewiseConstant>(&repr_)) return (*pc)(x);
        return std::get<GeneralFn>(repr_)(x);
    }

    const std::string& label() const { return label_; }
    bool is_piecewise() const { return std::holds_alternative<PiecewiseConstant>(repr_); }

    /// Null for general strategies.
    const PiecewiseConstant* piecewise_form() const {
        return std::get_if<PiecewiseConstant>(&repr_);
    }

private:
    std::variant<PiecewiseConstant, GeneralFn> repr_;
    std::string label_;
};

/// a(x) = rate * 1(x > threshold). Requires 0 <= rate <= cap, threshold >= 0.
Strategy make_threshold(const ModelParams& params, double rate, double threshold);

/// Step function from sorted breakpoints; leftmost value applies on
/// (-inf, breakpoints[0]].
Strategy make_piecewise(std::vector<double> breakpoints, std::vector<double> values,
                        std::string label = "");

/// Wrap an arbitrary callable. Admissibility of these can only be sampled,
/// never proven; see validate().
Strategy make_general(Strategy::GeneralFn fn, std::string label = "general");

inline double evaluate(const Strategy& strategy, double x) { return strategy(x); }

struct Violation {
    double x;          ///< witnessing point
    std::string rule;  ///< which constraint failed
};

struct AdmissibilityReport {
    bool admissible = true;
    std::vector<Violation> violations;
    std::string note;  ///< how the check was performed (exact or sampled grid)
};

/// Checks 0 <= a(x) <= cap everywhere and a(x) = 0 for x <= 0.
/// Piecewise strategies are checked exactly, piece by piece; general
/// strategies are sampled on `probe_grid`. Never throws: violations are
/// reported with the witnessing x.
AdmissibilityReport validate(const Strategy& strategy, const ModelParams& params,
                             std::span<const double> probe_grid);

/// Default probe grid used when callers do not supply one: 2001 points
/// covering [-10, 10] around both 0 and params.x0.
std::vector<double> default_probe_grid(const ModelParams& params);

/// Throws std::invalid_argument when the strategy is not admissible
/// (general strategies: sampled on the default grid).
void require_admissible(const Strategy& strategy, const ModelParams& params);

}  // namespace ergolab
