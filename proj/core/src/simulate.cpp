#include "ergolab/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "ergolab/rng.hpp"

namespace ergolab {

namespace {

std::uint64_t step_count(const SimConfig& cfg) {
    // Horizon rounds to a whole number of steps; validation guarantees >= 1.
    return static_cast<std::uint64_t>(std::llround(cfg.horizon / cfg.dt));
}

// Strategy evaluators the step loop can inline. Every acceptance-scale run
// uses a constant or single-threshold strategy, so those two get dedicated
// branch-free forms; everything else goes through the generic callable.
struct ConstEval {
    double value;
    double operator()(double) const { return value; }
};

struct ThresholdEval {
    double threshold;
    double below;
    double above;
    double operator()(double x) const { return x > threshold ? above : below; }
};

template <class Fn>
decltype(auto) with_evaluator(const Strategy& strategy, Fn&& fn) {
    if (const auto* pc = strategy.piecewise_form()) {
        if (pc->breakpoints.empty()) {
            return fn(ConstEval{pc->values[0]});
        }
        if (pc->breakpoints.size() == 1) {
            return fn(ThresholdEval{pc->breakpoints[0], pc->values[0], pc->values[1]});
        }
        return fn([pc](double x) { return (*pc)(x); });
    }
    return fn([&strategy](double x) { return evaluate(strategy, x); });
}

// Euler-Maruyama core. `observe(k, t, x, reward)` fires at every grid point
// k = 0..N; a no-op observer compiles away, leaving the summary-only loop.
template <class AEval, class Observer>
PathStats integrate(const ModelParams& params, const AEval& a, const SimConfig& cfg,
                    std::uint64_t path_index, const PathProbe& probe, Observer&& observe) {
    const double dt = cfg.dt;
    const std::uint64_t n_steps = step_count(cfg);
    const double noise_step = std::sqrt(dt) * cfg.noise_scale;
    const double mu = params.mu;
    const double threshold = params.x0;
    const double bound = cfg.blow_up_bound;

    std::vector<std::uint64_t> checkpoint_steps;
    checkpoint_steps.reserve(probe.checkpoint_times.size());
    for (double t : probe.checkpoint_times) {
        const auto k = static_cast<std::uint64_t>(std::llround(t / dt));
        checkpoint_steps.push_back(std::min(k, n_steps));
    }
    const auto burn_in_step = static_cast<std::uint64_t>(
        std::llround(probe.burn_in_fraction * static_cast<double>(n_steps)));

    PathStats stats;
    stats.checkpoint_states.resize(checkpoint_steps.size());
    stats.horizon = static_cast<double>(n_steps) * dt;
    stats.burn_in_time = static_cast<double>(burn_in_step) * dt;

    PathRng rng(cfg.seed, path_index);
    double x = cfg.x_init;
    double reward = 0.0;
    double wiener = 0.0;
    double time_above = 0.0;
    std::size_t next_checkpoint = 0;
    const double a_init = a(x);

    for (std::uint64_t k = 0;; ++k) {
        // Grid point k: X at time k*dt, running reward = sum_{j<k} a_j*dt.
        if (k == burn_in_step) stats.reward_at_burn_in = reward;
        while (next_checkpoint < checkpoint_steps.size() &&
               checkpoint_steps[next_checkpoint] == k) {
            stats.checkpoint_states[next_checkpoint++] = x;
        }
        observe(k, static_cast<double>(k) * dt, x, reward);
        if (k == n_steps) break;

        const double ak = a(x);
        reward += ak * dt;
        if (x > threshold) time_above += dt;
        const double dw = noise_step * rng.normal();
        x += (mu - ak) * dt + dw;
        wiener += dw;
        if (!(std::abs(x) <= bound)) {
            std::ostringstream msg;
            msg << "path " << path_index << " left [-" << bound << ", " << bound
                << "] at step " << (k + 1) << " (x = " << x << ")";
            throw SimulationError(msg.str(), path_index, k + 1);
        }
    }

    stats.final_state = x;
    stats.reward = reward;
    stats.reward_trapezoid = reward + 0.5 * dt * (a(x) - a_init);
    stats.wiener_final = wiener;
    stats.time_above_threshold = time_above;
    return stats;
}

struct NoObserver {
    void operator()(std::uint64_t, double, double, double) const {}
};

void validate_inputs(const ModelParams& params, const Strategy& strategy,
                     const SimConfig& cfg, const PathProbe& probe) {
    validate(params);
    validate(cfg);
    validate(probe, cfg);
    require_admissible(strategy, params);
}

}  // namespace

void validate(const PathProbe& probe, const SimConfig& cfg) {
    if (!(probe.burn_in_fraction >= 0.0) || !(probe.burn_in_fraction < 1.0)) {
        throw std::invalid_argument("PathProbe: burn_in_fraction must be in [0, 1)");
    }
    double prev = -1.0;
    for (double t : probe.checkpoint_times) {
        if (!(t >= 0.0) || t > cfg.horizon) {
            throw std::invalid_argument("PathProbe: checkpoint times must lie in [0, horizon]");
        }
        if (t <= prev) {
            throw std::invalid_argument("PathProbe: checkpoint times must be strictly increasing");
        }
        prev = t;
    }
}

Trajectory simulate_path(const ModelParams& params, const Strategy& strategy,
                         const SimConfig& cfg, std::uint64_t path_index) {
    validate_inputs(params, strategy, cfg, {});

    const std::uint64_t n_steps = step_count(cfg);
    const std::uint64_t stride = cfg.record_stride;
    Trajectory out;
    const auto n_records = static_cast<std::size_t>(n_steps / stride + 2);
    out.times.reserve(n_records);
    out.states.reserve(n_records);
    out.reward_integral.reserve(n_records);

    auto record = [&](std::uint64_t k, double t, double x, double reward) {
        if (k % stride == 0 || k == n_steps) {
            out.times.push_back(t);
            out.states.push_back(x);
            out.reward_integral.push_back(reward);
        }
    };
    with_evaluator(strategy, [&](const auto& a) {
        integrate(params, a, cfg, path_index, {}, record);
    });
    return out;
}

PathStats run_single_path(const ModelParams& params, const Strategy& strategy,
                          const SimConfig& cfg, std::uint64_t path_index,
                          const PathProbe& probe) {
    validate_inputs(params, strategy, cfg, probe);
    return with_evaluator(strategy, [&](const auto& a) {
        return integrate(params, a, cfg, path_index, probe, NoObserver{});
    });
}

std::vector<PathStats> run_paths(const ModelParams& params, const Strategy& strategy,
                                 const SimConfig& cfg, const PathProbe& probe) {
    validate_inputs(params, strategy, cfg, probe);

    const std::size_t n = cfg.n_paths;
    std::vector<PathStats> out(n);
    std::vector<std::pair<std::size_t, std::string>> failures;
    std::mutex failures_mutex;

    auto worker_body = [&](std::size_t i) {
        try {
            out[i] = with_evaluator(strategy, [&](const auto& a) {
                return integrate(params, a, cfg, i, probe, NoObserver{});
            });
        } catch (const std::exception& err) {
            const std::lock_guard<std::mutex> lock(failures_mutex);
            failures.emplace_back(i, err.what());
        }
    };

    const unsigned n_threads = resolve_thread_count(n);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) worker_body(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    worker_body(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    if (!failures.empty()) {
        std::sort(failures.begin(), failures.end());
        std::ostringstream msg;
        msg << failures.size() << " of " << n << " paths failed (indices";
        for (const auto& [i, _] : failures) msg << ' ' << i;
        msg << "); first: " << failures.front().second;
        throw SimulationError(msg.str(), failures.front().first, 0);
    }
    return out;
}

EnsembleStats simulate_ensemble(const ModelParams& params, const Strategy& strategy,
                                const SimConfig& cfg) {
    const std::vector<PathStats> paths = run_paths(params, strategy, cfg);

    EnsembleStats stats;
    stats.n_paths = paths.size();
    double sum_state = 0.0;
    double sum_rate = 0.0;
    for (const PathStats& p : paths) {
        sum_state += p.final_state;
        sum_rate += p.reward / p.horizon;
    }
    const auto n = static_cast<double>(paths.size());
    stats.mean_final_state = sum_state / n;
    stats.mean_reward_rate = sum_rate / n;

    if (paths.size() > 1) {
        double ss = 0.0;
        for (const PathStats& p : paths) {
            const double d = p.reward / p.horizon - stats.mean_reward_rate;
            ss += d * d;
        }
        stats.std_error = std::sqrt(ss / (n * (n - 1.0)));
    }
    return stats;
}

unsigned resolve_thread_count(std::size_t n_tasks) {
    if (n_tasks <= 1) return 1;
    unsigned limit = std::thread::hardware_concurrency();
    if (limit == 0) limit = 1;
    if (const char* env = std::getenv("ERGOLAB_THREADS")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && parsed >= 1 && parsed <= 4096) {
            limit = static_cast<unsigned>(parsed);
        }
    }
    return static_cast<unsigned>(std::min<std::size_t>(limit, n_tasks));
}

}  // namespace ergolab
