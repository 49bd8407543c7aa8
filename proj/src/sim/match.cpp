// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/sim/match.hpp"

#include "tstf/core/errors.hpp"

#include <cmath>

namespace tstf::sim {

std::string_view winner_name(Winner w) {
  switch (w) {
    case Winner::p1: return "p1";
    case Winner::p2: return "p2";
    case Winner::draw: return "draw";
  }
  return "draw";
}

Winner parse_winner(std::string_view s) {
  if (s == "p1") return Winner::p1;
  if (s == "p2") return Winner::p2;
  if (s == "draw") return Winner::draw;
  throw ContractError("unknown winner '" + std::string(s) + "'");
}

Winner survivor_winner(const GameState& state) {
  const int a = state.count_units(Owner::p1);
  const int b = state.count_units(Owner::p2);
  return a > b ? Winner::p1 : (b > a ? Winner::p2 : Winner::draw);
}

MatchRecord run_match(std::string_view strategy_a, std::string_view strategy_b, std::uint64_t seed,
                      const SimConfig& config) {
  if (config.capture_every < 1 || config.max_steps < 1) throw ConfigError("capture_every and max_steps must be >= 1");
  auto p1 = make_strategy(strategy_a);
  auto p2 = make_strategy(strategy_b);
  MatchRecord rec;
  rec.strategy_a = std::string(strategy_a);
  rec.strategy_b = std::string(strategy_b);
  rec.seed = seed;

  Rng rng(seed);
  GameState state = standard_start(config.width, config.height);
  bool over = false;
  while (!over) {
    state = step(state, *p1, *p2, rng, config.rules);
    over = state.step >= config.max_steps || !state.has_base(Owner::p1) || !state.has_base(Owner::p2);
    if (over || state.step % config.capture_every == 0) rec.frames.push_back({state.step, encode_raw(state)});
  }
  rec.duration = state.step;
  const bool alive1 = state.has_base(Owner::p1);
  const bool alive2 = state.has_base(Owner::p2);
  if (alive1 && !alive2) {
    rec.winner = Winner::p1;
  } else if (alive2 && !alive1) {
    rec.winner = Winner::p2;
  } else {
    rec.winner = survivor_winner(state);
  }
  return rec;
}

std::size_t prefix_frame_count(const MatchRecord& record, double progress) {
  if (!(progress > 0.0 && progress <= 1.0)) throw ContractError("progress must lie in (0, 1]");
  if (record.frames.empty()) throw ContractError("match record has no frames");
  const auto limit = static_cast<int>(std::ceil(progress * record.duration - 1e-9));
  std::size_t n = 0;
  while (n < record.frames.size() && record.frames[n].step <= limit) ++n;
  return n == 0 ? 1 : n;
}

std::vector<std::size_t> timeline_indices(std::size_t prefix_frames, int time_steps) {
  if (time_steps < 1) throw ContractError("time_steps must be >= 1");
  if (prefix_frames < 1) throw ContractError("empty prefix");
  const std::size_t t = static_cast<std::size_t>(time_steps);
  std::vector<std::size_t> idx(t);
  if (t == 1) {
    idx[0] = prefix_frames - 1;
    return idx;
  }
  // floor((2 i (P-1) + (T-1)) / (2 (T-1))) == round-half-up of i (P-1) / (T-1)
  for (std::size_t i = 0; i < t; ++i) idx[i] = (2 * i * (prefix_frames - 1) + (t - 1)) / (2 * (t - 1));
  return idx;
}

Tensor sample_timeline(const MatchRecord& record, int time_steps, double progress) {
  return sample_prefix(record, time_steps, prefix_frame_count(record, progress));
}

Tensor sample_prefix(const MatchRecord& record, int time_steps, std::size_t prefix_frames) {
  if (prefix_frames > record.frames.size()) throw ContractError("prefix longer than the recorded match");
  const auto idx = timeline_indices(prefix_frames, time_steps);
  const RawFrame& first = record.frames.front().planes;
  const Index frame_size = static_cast<Index>(first.values.size());
  Vector data(frame_size * time_steps);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    data.segment(static_cast<Index>(i) * frame_size, frame_size) = normalize(record.frames[idx[i]].planes).values;
  }
  return Tensor({time_steps, kPlanes, first.height, first.width}, std::move(data));
}

}  // namespace tstf::sim
