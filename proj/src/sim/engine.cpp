// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/sim/engine.hpp"

#include <algorithm>

namespace tstf::sim {
namespace {

std::optional<UnitKind> producer_for(UnitKind building, UnitKind product) {
  if (building == UnitKind::base && product == UnitKind::worker) return product;
  if (building == UnitKind::barracks && is_combat(product)) return product;
  return std::nullopt;
}

}  // namespace

bool apply_action(GameState& s, Owner player, const Action& a, const SimRules& rules) {
  if (!s.in_bounds(a.actor) || !s.in_bounds(a.target)) return false;
  auto& cell = s.at(a.actor);
  if (!cell || cell->id != a.unit_id || cell->owner != player) return false;
  Unit& u = *cell;
  const int reach = chebyshev(a.actor, a.target);

  switch (a.type) {
    case ActionType::move: {
      if (!is_mobile(u.kind) || u.busy > 0 || manhattan(a.actor, a.target) != 1 || !s.is_free(a.target)) return false;
      s.move(a.actor, a.target);
      return true;
    }
    case ActionType::harvest: {
      auto& res = s.at(a.target);
      if (u.kind != UnitKind::worker || u.busy > 0 || reach != 1 || !res || res->kind != UnitKind::resource) return false;
      const int room = rules.worker_capacity - u.resources;
      const int take = std::min({rules.harvest_amount, room, res->resources});
      if (take <= 0) return false;
      u.resources += take;
      u.busy = rules.harvest_time;
      res->resources -= take;
      if (res->resources <= 0) {
        res->hp = 0;
        s.remove(a.target);
      }
      return true;
    }
    case ActionType::deposit: {
      const auto& base = s.at(a.target);
      if (u.kind != UnitKind::worker || u.resources <= 0 || reach != 1 || !base || base->kind != UnitKind::base ||
          base->owner != player) {
        return false;
      }
      int& store = s.store_of(player);
      store = std::min(rules.max_store, store + u.resources);
      u.resources = 0;
      return true;
    }
    case ActionType::build: {
      const int cost = rules[UnitKind::barracks].cost;
      if (u.kind != UnitKind::worker || a.kind != UnitKind::barracks || u.busy > 0 || reach != 1 ||
          !s.is_free(a.target) || s.store_of(player) < cost) {
        return false;
      }
      s.store_of(player) -= cost;
      u.busy = rules[UnitKind::barracks].produce_time;
      s.place(a.target, Unit{UnitKind::barracks, max_hp(UnitKind::barracks), player, 0});
      return true;
    }
    case ActionType::train: {
      const auto product = producer_for(u.kind, a.kind);
      if (!product || u.busy > 0 || reach != 1 || !s.is_free(a.target)) return false;
      const UnitStats& st = rules[*product];
      if (s.store_of(player) < st.cost) return false;
      s.store_of(player) -= st.cost;
      u.busy = st.produce_time;
      s.place(a.target, Unit{*product, max_hp(*product), player, 0});
      return true;
    }
    case ActionType::attack: {
      auto& victim = s.at(a.target);
      if (!is_mobile(u.kind) || !victim || victim->owner != opponent(player) || reach > rules[u.kind].range) {
        return false;
      }
      victim->hp -= rules[u.kind].damage;
      if (victim->hp <= 0) s.remove(a.target);
      return true;
    }
  }
  return false;
}

GameState step(const GameState& state, Strategy& p1, Strategy& p2, Rng& rng, const SimRules& rules,
               StepReport* report) {
  GameState next = state;
  for (const Placed& p : next.units()) {
    auto& u = next.at(p.pos);
    if (u->busy > 0) --u->busy;
  }

  std::vector<Action> orders1;
  std::vector<Action> orders2;
  p1.decide(next, Owner::p1, rules, rng, orders1);
  p2.decide(next, Owner::p2, rules, rng, orders2);

  const bool p1_first = rng.chance(0.5);
  const std::vector<Action>& first = p1_first ? orders1 : orders2;
  const std::vector<Action>& second = p1_first ? orders2 : orders1;
  const Owner first_owner = p1_first ? Owner::p1 : Owner::p2;

  std::vector<char> acted(next.next_id() + 1, 0);
  auto apply = [&](const Action& a, Owner who) {
    // one order per unit per step
    const bool ok = a.unit_id < acted.size() && !acted[a.unit_id] && apply_action(next, who, a, rules);
    if (ok) acted[a.unit_id] = 1;
    if (report) ++(ok ? report->applied : report->dropped);
  };
  const std::size_t rounds = std::max(first.size(), second.size());
  for (std::size_t i = 0; i < rounds; ++i) {
    if (i < first.size()) apply(first[i], first_owner);
    if (!next.has_base(Owner::p1) || !next.has_base(Owner::p2)) break;
    if (i < second.size()) apply(second[i], opponent(first_owner));
    if (!next.has_base(Owner::p1) || !next.has_base(Owner::p2)) break;
  }
  ++next.step;
  return next;
}

}  // namespace tstf::sim
