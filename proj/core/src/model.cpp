#include "ergolab/model.hpp"

#include <cmath>

namespace ergolab {

void validate(const ModelParams& params) {
    if (!(params.mu > 0.0) || !std::isfinite(params.mu)) {
        throw std::invalid_argument("ModelParams: mu must be positive and finite");
    }
    if (!(params.cap > params.mu) || !std::isfinite(params.cap)) {
        throw std::invalid_argument("ModelParams: cap must exceed mu");
    }
    if (!(params.x0 >= 0.0) || !std::isfinite(params.x0)) {
        throw std::invalid_argument("ModelParams: x0 must be >= 0");
    }
}

void validate(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
        throw std::invalid_argument("SimConfig: dt must be positive and finite");
    }
    if (!(cfg.horizon >= cfg.dt) || !std::isfinite(cfg.horizon)) {
        throw std::invalid_argument("SimConfig: horizon must be >= dt");
    }
    if (cfg.horizon / cfg.dt > 1e12) {
        throw std::invalid_argument("SimConfig: horizon/dt exceeds 1e12 steps");
    }
    if (cfg.n_paths < 1) {
        throw std::invalid_argument("SimConfig: n_paths must be >= 1");
    }
    if (!std::isfinite(cfg.x_init)) {
        throw std::invalid_argument("SimConfig: x_init must be finite");
    }
    if (cfg.record_stride < 1) {
        throw std::invalid_argument("SimConfig: record_stride must be >= 1");
    }
    if (!(cfg.noise_scale >= 0.0) || !std::isfinite(cfg.noise_scale)) {
        throw std::invalid_argument("SimConfig: noise_scale must be >= 0");
    }
    if (!(cfg.blow_up_bound > 0.0)) {
        throw std::invalid_argument("SimConfig: blow_up_bound must be positive");
    }
}

}  // namespace ergolab
