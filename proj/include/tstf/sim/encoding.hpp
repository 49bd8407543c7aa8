// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/sim/game_state.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <vector>

namespace tstf::sim {

/// Feature planes, in order.
enum class Plane : int { type = 0, health = 1, faction = 2, neutral_resources = 3, faction_resources = 4 };
inline constexpr int kPlanes = 5;

/// Divisors that map each raw plane into [0, 1].
inline constexpr std::array<double, kPlanes> kPlaneScale{7.0, 10.0, 2.0, 25.0, 25.0};

/// Raw (unnormalized) integer planes, laid out [plane][y][x].
///
///   type               unit kind code 1..7
///   health             hp 0..10
///   faction            owner 1..2, 0 for neutral
///   neutral_resources  resource-cell stock, or the load a worker carries (0..25)
///   faction_resources  owner's store, written on each of its base cells (0..25)
///
/// Empty cells are 0 in every plane.
struct RawFrame {
  int width = 16;
  int height = 16;
  std::vector<std::uint8_t> values;  // kPlanes * height * width

  std::uint8_t at(Plane p, int x, int y) const {
    return values[static_cast<std::size_t>((static_cast<int>(p) * height + y) * width + x)];
  }
  std::uint8_t& at(Plane p, int x, int y) {
    return values[static_cast<std::size_t>((static_cast<int>(p) * height + y) * width + x)];
  }
  bool operator==(const RawFrame&) const = default;
};

/// Normalized planes, same layout as RawFrame, every value in [0, 1].
struct StateTensor {
  int width = 16;
  int height = 16;
  Eigen::VectorXd values;

  double at(Plane p, int x, int y) const { return values[(static_cast<int>(p) * height + y) * width + x]; }
};

RawFrame encode_raw(const GameState& state);
StateTensor normalize(const RawFrame& raw);
StateTensor encode_state(const GameState& state);

/// Rebuilds a state from raw planes. Kind, hp and owner are exact; worker loads,
/// resource stocks and stores come back from the resource planes (a store is
/// lost when its owner has no base). Ids are reassigned and busy timers reset.
GameState decode_state(const RawFrame& raw, int step = 0);

}  // namespace tstf::sim
