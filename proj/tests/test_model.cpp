#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "ergolab/model.hpp"

using namespace ergolab;

TEST_CASE("default parameters validate") {
    CHECK_NOTHROW(validate(ModelParams{}));
    CHECK_NOTHROW(validate(SimConfig{}));
}

TEST_CASE("model parameter violations throw") {
    ModelParams p;

    p.mu = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p.mu = -1.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p.mu = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(p), std::invalid_argument);

    p = ModelParams{};
    p.cap = p.mu;  // cap must strictly exceed mu, else no ergodic strategy exists
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p.cap = 0.5;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);

    p = ModelParams{};
    p.x0 = -0.1;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p.x0 = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("simulation config violations throw") {
    SimConfig cfg;

    cfg.dt = 0.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.dt = -1e-3;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

    cfg = SimConfig{};
    cfg.horizon = cfg.dt / 2;  // must cover at least one step
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

    cfg = SimConfig{};
    cfg.dt = 1e-12;
    cfg.horizon = 1e6;  // 10^18 steps: step counter would overflow
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

    cfg = SimConfig{};
    cfg.n_paths = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

    cfg = SimConfig{};
    cfg.record_stride = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

    cfg = SimConfig{};
    cfg.noise_scale = -1.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

    cfg = SimConfig{};
    cfg.blow_up_bound = 0.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("simulation error carries path and step") {
    SimulationError err("boom", 7, 42);
    CHECK(err.path_index() == 7);
    CHECK(err.step_index() == 42);
    CHECK(std::string(err.what()) == "boom");
}
