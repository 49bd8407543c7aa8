// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/sim/game_state.hpp"
#include "tstf/sim/match.hpp"

#include <array>
#include <string>
#include <string_view>

namespace tstf::baselines {

using sim::GameState;
using sim::Owner;
using sim::UnitKind;

/// Scoring weights. The defaults are our own choice; per-kind tables are
/// indexed by UnitKind code.
struct EvalWeights {
  double w_res = 20.0;
  double w_work = 10.0;
  double w_unit = 40.0;
  double w_base = 50.0;
  double w_barracks = 25.0;
  std::array<double, sim::kUnitKindCount + 1> alpha{0, 0, 0, 0, 1, 4, 8, 2};
  std::array<double, sim::kUnitKindCount + 1> unit_cost{};
  double lanchester_exponent = 0.7;

  /// Costs copied from the simulator rule table.
  static EvalWeights defaults(const sim::SimRules& rules = sim::SimRules::defaults());

  /// Throws ConfigError on negative or non-finite weights or an exponent outside (0, 1].
  void validate() const;

  double alpha_of(UnitKind k) const { return alpha[static_cast<std::size_t>(k)]; }
  double cost_of(UnitKind k) const { return unit_cost[static_cast<std::size_t>(k)]; }
};

enum class Evaluator { simple, lanchester };
std::string_view evaluator_name(Evaluator e);
Evaluator parse_evaluator(std::string_view s);

/// w_res * store + w_work * carried + w_unit * sum(cost * hp / max_hp) over
/// the player's units.
double simple_eval(const GameState& state, Owner player, const EvalWeights& w = EvalWeights::defaults());

/// w_res * store + w_work * carried + w_base * sum(hp ratio of bases)
/// + w_barracks * sum(hp ratio of barracks)
/// + sum(alpha_u * hp ratio of u) * N^exponent over the N mobile units.
double lanchester_eval(const GameState& state, Owner player, const EvalWeights& w = EvalWeights::defaults());

double evaluate(Evaluator e, const GameState& state, Owner player, const EvalWeights& w = EvalWeights::defaults());

/// Sign of E_1 - E_2; exactly zero is a draw.
sim::Winner predict_winner_classical(const GameState& state, Evaluator e,
                                     const EvalWeights& w = EvalWeights::defaults());

}  // namespace tstf::baselines
