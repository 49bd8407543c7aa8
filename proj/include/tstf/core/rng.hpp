// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace tstf {

/// SplitMix64. The whole project draws randomness from this one generator so that
/// a seed reproduces bit-identical runs on every platform (the standard library
/// distributions are implementation-defined, so they are not used).
///
/// State transition:   state += 0x9E3779B97F4A7C15
/// Output:             z = state
///                     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///                     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///                     return z ^ (z >> 31)
class Rng {
 public:
  explicit constexpr Rng(std::uint64_t seed = 0) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). bound must be positive.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift; bias is below 2^-64 * bound, irrelevant here.
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  bool chance(double p) noexcept { return uniform() < p; }

  /// Standard normal via Box-Muller (cosine branch only, one draw per call pair).
  double normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double stddev) noexcept { return mean + stddev * normal(); }

  std::uint64_t state() const noexcept { return state_; }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Derives an independent stream seed from a parent seed and a list of keys.
  template <typename... Keys>
  static constexpr std::uint64_t derive(std::uint64_t seed, Keys... keys) noexcept {
    std::uint64_t s = mix(seed + 0x9E3779B97F4A7C15ULL);
    ((s = mix(s ^ (static_cast<std::uint64_t>(keys) + 0x9E3779B97F4A7C15ULL))), ...);
    return s;
  }

 private:
  std::uint64_t state_;
};

}  // namespace tstf
