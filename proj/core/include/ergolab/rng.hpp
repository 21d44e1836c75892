#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ergolab {

/// SplitMix64 step (Steele, Lea, Flood). Bijective mix of a 64-bit counter;
/// used here only to expand seeds into engine states.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256++ (Blackman, Vigna). Small, fast, and fully specified, so
/// streams are bit-identical across platforms and standard libraries.
class Xoshiro256PlusPlus {
public:
    explicit Xoshiro256PlusPlus(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& word : s_) word = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

/// Per-path random stream.
///
/// Splitting rule: path k of a run with master seed s draws from an
/// xoshiro256++ engine seeded with
///
///     path_seed(s, k) = s + (k + 1) * 0x9E3779B97F4A7C15  (mod 2^64)
///
/// expanded through SplitMix64. Each path owns an independent engine, so
/// ensemble members can be simulated in any order, on any number of threads,
/// and still reproduce bit-identically.
class PathRng {
public:
    PathRng(std::uint64_t master_seed, std::uint64_t path_index)
        : engine_(master_seed + (path_index + 1) * 0x9E3779B97F4A7C15ULL) {}

    /// Uniform double in (0, 1]. The open lower end keeps log() finite.
    double uniform() {
        return static_cast<double>((engine_.next() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via the Box-Muller transform. Pairs are generated
    /// together and the second member cached, so consumption of the
    /// underlying stream is two uniforms per two normals regardless of the
    /// simulated dynamics.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cached_ = radius * std::sin(angle);
        has_cached_ = true;
        return radius * std::cos(angle);
    }

private:
    Xoshiro256PlusPlus engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace ergolab
