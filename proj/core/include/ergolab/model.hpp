#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ergolab {

/// Parameters of the controlled reserve diffusion
///   dX_t = (mu - a(X_t)) dt + dW_t
/// with withdrawal rates constrained to 0 <= a(x) <= cap and a(x) = 0 for
/// x <= 0. The diffusion coefficient is fixed at 1.
struct ModelParams {
    double mu = 1.0;   ///< premium growth rate, > 0
    double cap = 3.0;  ///< maximum withdrawal rate (M), > mu
    double x0 = 0.0;   ///< strategy threshold, >= 0
};

/// Simulation run configuration. All randomness derives from `seed`; paths of
/// an ensemble are reproducible independently of scheduling (see rng.hpp).
struct SimConfig {
    double dt = 1e-3;
    double horizon = 1e4;
    std::uint64_t seed = 0;
    std::size_t n_paths = 1;
    double x_init = 0.0;
    /// Record every k-th grid point in a Trajectory (final point always kept).
    std::size_t record_stride = 1;
    /// Noise multiplier; 0 turns the diffusion off (deterministic test mode).
    double noise_scale = 1.0;
    /// A path aborts if |X| exceeds this. The drift is bounded, so the guard
    /// only catches misuse (bad parameters, corrupted strategies).
    double blow_up_bound = 1e6;
};

void validate(const ModelParams& params);
void validate(const SimConfig& cfg);

/// Numerical failure inside a path simulation (blow-up or non-finite state).
class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& what, std::size_t path_index, std::size_t step_index)
        : std::runtime_error(what), path_index_(path_index), step_index_(step_index) {}

    std::size_t path_index() const { return path_index_; }
    std::size_t step_index() const { return step_index_; }

private:
    std::size_t path_index_;
    std::size_t step_index_;
};

}  // namespace ergolab
