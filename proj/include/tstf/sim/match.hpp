// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/core/tensor.hpp"
#include "tstf/sim/encoding.hpp"
#include "tstf/sim/engine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tstf::sim {

enum class Winner : std::uint8_t { p1, p2, draw };
std::string_view winner_name(Winner w);
Winner parse_winner(std::string_view s);

struct SimConfig {
  int width = 16;
  int height = 16;
  int max_steps = 1000;
  int capture_every = 2;
  SimRules rules = SimRules::defaults();
};

struct Frame {
  int step = 0;
  RawFrame planes;
  bool operator==(const Frame&) const = default;
};

struct MatchRecord {
  std::uint64_t id = 0;
  std::string strategy_a;  // plays p1
  std::string strategy_b;  // plays p2
  std::uint64_t seed = 0;
  Winner winner = Winner::draw;
  int duration = 0;
  std::vector<Frame> frames;  // strictly increasing steps
  bool operator==(const MatchRecord&) const = default;
};

/// Plays one match from standard_start. Ends when a base falls or at
/// max_steps; on timeout the side with more surviving units wins, equal counts
/// draw. Frames are captured after every step divisible by capture_every and
/// after the final step.
MatchRecord run_match(std::string_view strategy_a, std::string_view strategy_b, std::uint64_t seed,
                      const SimConfig& config = {});

/// Winner by surviving unit count (structures included); equal counts draw.
Winner survivor_winner(const GameState& state);

/// Number of frames whose step lies within the first ceil(progress * duration)
/// steps; never less than 1.
std::size_t prefix_frame_count(const MatchRecord& record, double progress);

/// round(i * (P - 1) / (T - 1)) for i = 0..T-1, halves rounding up; T == 1
/// selects P - 1.
std::vector<std::size_t> timeline_indices(std::size_t prefix_frames, int time_steps);

/// Normalized [T, C, H, W] input built from T evenly spaced frames among the
/// first `prefix_frames` frames.
Tensor sample_prefix(const MatchRecord& record, int time_steps, std::size_t prefix_frames);

/// sample_prefix over the frames of the progress prefix.
Tensor sample_timeline(const MatchRecord& record, int time_steps, double progress);

}  // namespace tstf::sim
