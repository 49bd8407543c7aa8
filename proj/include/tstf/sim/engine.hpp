// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/core/rng.hpp"
#include "tstf/sim/game_state.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace tstf::sim {

enum class ActionType : std::uint8_t { move, harvest, deposit, build, train, attack };

/// One unit order. `actor` must still hold the unit with `unit_id` when the
/// order is applied; `target` is the destination / victim / placement cell.
struct Action {
  std::uint32_t unit_id = 0;
  Pos actor;
  ActionType type = ActionType::move;
  Pos target;
  UnitKind kind = UnitKind::worker;  // build / train product
};

/// Scripted policy. Decisions read the same snapshot for both players.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string_view name() const = 0;
  virtual void decide(const GameState& state, Owner me, const SimRules& rules, Rng& rng,
                      std::vector<Action>& out) = 0;
};

/// Registered analog names: RandomBiasedLite, WorkerRushLite, LightRushLite,
/// HeavyRushLite, RangedRushLite, EconomyRushLite, PassiveLite.
/// A roster entry may carry a "#tag" suffix ("LightRushLite#b") to enter the
/// same policy twice; the tag does not change behavior.
std::unique_ptr<Strategy> make_strategy(std::string_view name);
std::vector<std::string> registered_strategies();
bool is_registered(std::string_view name);

/// Validates and applies one order; returns false (and leaves the state
/// untouched) when the order is illegal.
bool apply_action(GameState& state, Owner player, const Action& action, const SimRules& rules);

struct StepReport {
  int applied = 0;
  int dropped = 0;
};

/// Advances one step: busy timers tick down, both players decide on the same
/// snapshot, then orders are applied alternately, the first mover drawn from
/// `rng` after both decisions. Application stops early once a base falls. Illegal orders are
/// dropped and counted in `report`. Deterministic in (state, strategies, rng state).
GameState step(const GameState& state, Strategy& p1, Strategy& p2, Rng& rng, const SimRules& rules,
               StepReport* report = nullptr);

}  // namespace tstf::sim
