// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random-number streams. Each simulation run owns a small set of
// named streams ("channel-state", "shadowing", "blockage", "phy-error") that are
// seeded independently from the run seed, so drawing from one stream never
// perturbs the sequence of another. The generator is SplitMix64; per-run seeds
// are derived from the master seed with the same finalizer, which gives
// collision-free parallel replications without coordination.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace mmv2v {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer (Stafford mix13 variant used by splitmix64).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// FNV-1a over the stream name, used to separate streams under one run seed.
inline constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// Per-run seed for replication `run_index` under `master_seed`.
inline constexpr std::uint64_t split_seed(std::uint64_t master_seed,
                                          std::uint64_t run_index) {
  return mix64(master_seed + (run_index + 1) * kGolden);
}

// One independent SplitMix64 stream.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t run_seed, std::string_view name)
      : state_(mix64(run_seed ^ fnv1a64(name))) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller. Two uniforms per draw, no caching, so the
  // draw count per variate is fixed and replay stays aligned.
  double normal() {
    double u1 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  bool bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("bernoulli: p must be in [0,1]");
    return uniform01() < p;
  }

 private:
  std::uint64_t state_ = 0;
};

}  // namespace mmv2v
