#pragma once

#include <cmath>
#include <cstdint>

#include "ccqsim/common.hpp"

namespace ccqsim {

// Counter-based Gaussian stream. Every increment is a pure function of
// (master_seed, trajectory_index, step, substream), so trajectories can be
// dealt to any number of workers in any order and still reproduce bit-exactly.
namespace rng {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline uint64_t mix(uint64_t a, uint64_t b) { return splitmix64(a ^ (b + 0x9E3779B97F4A7C15ull)); }

// Uniform in the open interval (0,1).
inline double u01(uint64_t v) { return static_cast<double>(v >> 11) * 0x1.0p-53 + 0x1.0p-54; }

// Standard normal via Box-Muller on two counter-derived uniforms.
inline double normal(uint64_t seed, uint64_t trajectory, uint64_t step, uint64_t substream = 0) {
    uint64_t k = mix(mix(mix(seed, trajectory), step), substream);
    const double u1 = u01(splitmix64(k));
    const double u2 = u01(splitmix64(k + 0x632BE59BD9B4E019ull));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

// Wiener increment dW ~ N(0, dt).
inline double wiener(uint64_t seed, uint64_t trajectory, uint64_t step, double dt) {
    return std::sqrt(dt) * normal(seed, trajectory, step);
}

}  // namespace rng
}  // namespace ccqsim
