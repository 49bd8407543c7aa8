// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/baselines/evaluators.hpp"

#include "tstf/core/errors.hpp"

#include <cmath>

namespace tstf::baselines {

EvalWeights EvalWeights::defaults(const sim::SimRules& rules) {
  EvalWeights w;
  for (int k = 1; k <= sim::kUnitKindCount; ++k) {
    w.unit_cost[static_cast<std::size_t>(k)] = rules[static_cast<UnitKind>(k)].cost;
  }
  return w;
}

void EvalWeights::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  bool good = ok(w_res) && ok(w_work) && ok(w_unit) && ok(w_base) && ok(w_barracks);
  for (double a : alpha) good = good && ok(a);
  for (double c : unit_cost) good = good && ok(c);
  if (!good) throw ConfigError("evaluator weights must be finite and non-negative");
  if (!(lanchester_exponent > 0.0 && lanchester_exponent <= 1.0)) {
    throw ConfigError("lanchester exponent must lie in (0, 1]");
  }
}

std::string_view evaluator_name(Evaluator e) { return e == Evaluator::simple ? "simple" : "lanchester"; }

Evaluator parse_evaluator(std::string_view s) {
  if (s == "simple") return Evaluator::simple;
  if (s == "lanchester") return Evaluator::lanchester;
  throw ConfigError("unknown evaluator '" + std::string(s) + "'");
}

namespace {

double hp_ratio(const sim::Unit& u) { return static_cast<double>(u.hp) / sim::max_hp(u.kind); }

double economy(const GameState& s, Owner player, const EvalWeights& w) {
  double carried = 0.0;
  for (const sim::Placed& p : s.units_of(player)) {
    if (p.unit.kind == UnitKind::worker) carried += p.unit.resources;
  }
  return w.w_res * s.store_of(player) + w.w_work * carried;
}

}  // namespace

double simple_eval(const GameState& s, Owner player, const EvalWeights& w) {
  double units = 0.0;
  for (const sim::Placed& p : s.units_of(player)) units += w.cost_of(p.unit.kind) * hp_ratio(p.unit);
  return economy(s, player, w) + w.w_unit * units;
}

double lanchester_eval(const GameState& s, Owner player, const EvalWeights& w) {
  double bases = 0.0;
  double barracks = 0.0;
  double force = 0.0;
  int n = 0;
  for (const sim::Placed& p : s.units_of(player)) {
    const sim::Unit& u = p.unit;
    if (u.kind == UnitKind::base) {
      bases += hp_ratio(u);
    } else if (u.kind == UnitKind::barracks) {
      barracks += hp_ratio(u);
    } else if (sim::is_mobile(u.kind)) {
      force += w.alpha_of(u.kind) * hp_ratio(u);
      ++n;
    }
  }
  const double combat = n == 0 ? 0.0 : force * std::pow(static_cast<double>(n), w.lanchester_exponent);
  return economy(s, player, w) + w.w_base * bases + w.w_barracks * barracks + combat;
}

double evaluate(Evaluator e, const GameState& state, Owner player, const EvalWeights& w) {
  return e == Evaluator::simple ? simple_eval(state, player, w) : lanchester_eval(state, player, w);
}

sim::Winner predict_winner_classical(const GameState& state, Evaluator e, const EvalWeights& w) {
  const double diff = evaluate(e, state, Owner::p1, w) - evaluate(e, state, Owner::p2, w);
  if (diff > 0.0) return sim::Winner::p1;
  if (diff < 0.0) return sim::Winner::p2;
  return sim::Winner::draw;
}

}  // namespace tstf::baselines
