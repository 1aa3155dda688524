// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rng.hpp
 * @brief SplitMix64 stream with Box-Muller normals.
 *
 * state_{k+1} = state_k + 0x9e3779b97f4a7c15, output = mix(state_{k+1}) with
 * the mixing constants 0xbf58476d1ce4e5b9 and 0x94d049bb133111eb (shifts 30,
 * 27, 31). Uniforms take the top 53 bits. Realization r of a run seeded with
 * S uses the stream seeded with derive_seed(S, r).
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fermient {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64_mix(master ^ splitmix64_mix(index + 0x632be59bd9b4e019ULL));
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

  /// Uniform on (0, 1).
  double uniform() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fermient
