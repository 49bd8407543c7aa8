// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

// Simplified scripted analogs of the classic microRTS bots. Every script uses the
// match RNG for tie-breaking and a small hesitation rate so that repeated rounds
// of the same pairing diverge.

#include "tstf/core/errors.hpp"
#include "tstf/sim/engine.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace tstf::sim {
namespace {

constexpr std::array<Pos, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
constexpr double kHesitation = 0.03;

Pos offset(Pos p, Pos d) { return {p.x + d.x, p.y + d.y}; }

struct Context {
  const GameState& state;
  Owner me;
  const SimRules& rules;
  Rng& rng;
  std::vector<Action>& out;
  std::vector<Placed> mine;
  std::vector<Placed> enemies;
  std::vector<Placed> resources;
  int budget;

  Context(const GameState& s, Owner o, const SimRules& r, Rng& g, std::vector<Action>& a)
      : state(s), me(o), rules(r), rng(g), out(a), budget(s.store_of(o)) {
    for (const Placed& p : s.units()) {
      if (p.unit.owner == o) {
        mine.push_back(p);
      } else if (p.unit.owner == opponent(o)) {
        enemies.push_back(p);
      } else if (p.unit.kind == UnitKind::resource) {
        resources.push_back(p);
      }
    }
    // Scan from the player's own corner so first-found ties break the same
    // way for both sides under the point mirror.
    if (o == Owner::p2) {
      std::reverse(mine.begin(), mine.end());
      std::reverse(enemies.begin(), enemies.end());
      std::reverse(resources.begin(), resources.end());
    }
  }

  std::vector<Placed> mine_of(UnitKind k) const {
    std::vector<Placed> v;
    for (const Placed& p : mine) {
      if (p.unit.kind == k) v.push_back(p);
    }
    return v;
  }

  void order(const Placed& u, ActionType type, Pos target, UnitKind kind = UnitKind::worker) {
    if (rng.chance(kHesitation)) return;
    out.push_back({u.unit.id, u.pos, type, target, kind});
  }
};

const Placed* nearest(const std::vector<Placed>& candidates, Pos from) {
  const Placed* best = nullptr;
  int best_d = std::numeric_limits<int>::max();
  for (const Placed& c : candidates) {
    const int d = manhattan(from, c.pos);
    if (d < best_d) {
      best_d = d;
      best = &c;
    }
  }
  return best;
}

// Greedy one-cell move that shrinks the Manhattan distance; random tie-break,
// occasional random sidestep when blocked.
std::optional<Pos> step_toward(const GameState& s, Pos from, Pos target, Rng& rng) {
  const int d0 = manhattan(from, target);
  std::array<Pos, 4> closer{};
  std::array<Pos, 4> level{};
  int nc = 0;
  int nl = 0;
  for (Pos d : kSteps) {
    const Pos p = offset(from, d);
    if (!s.is_free(p)) continue;
    const int dist = manhattan(p, target);
    if (dist < d0) closer[static_cast<std::size_t>(nc++)] = p;
    if (dist == d0 + 1 && nl < 4) level[static_cast<std::size_t>(nl++)] = p;
  }
  if (nc > 0) return closer[rng.below(static_cast<std::uint64_t>(nc))];
  if (nl > 0 && rng.chance(0.3)) return level[rng.below(static_cast<std::uint64_t>(nl))];
  return std::nullopt;
}

std::optional<Pos> random_step(const GameState& s, Pos from, Rng& rng) {
  std::array<Pos, 4> options{};
  int n = 0;
  for (Pos d : kSteps) {
    const Pos p = offset(from, d);
    if (s.is_free(p)) options[static_cast<std::size_t>(n++)] = p;
  }
  if (n == 0) return std::nullopt;
  return options[rng.below(static_cast<std::uint64_t>(n))];
}

// Free 8-neighbour cell, preferring the side facing `toward`.
std::optional<Pos> spawn_cell(const GameState& s, Pos at, Pos toward, Rng& rng) {
  std::vector<Pos> best;
  int best_d = std::numeric_limits<int>::max();
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      const Pos p{at.x + dx, at.y + dy};
      if ((dx == 0 && dy == 0) || !s.is_free(p)) continue;
      const int d = manhattan(p, toward);
      if (d < best_d) {
        best_d = d;
        best.clear();
      }
      if (d == best_d) best.push_back(p);
    }
  }
  if (best.empty()) return std::nullopt;
  return best[rng.below(best.size())];
}

Pos enemy_focus(const Context& c) {
  if (const Placed* e = nearest(c.enemies, c.mine.empty() ? Pos{} : c.mine.front().pos)) return e->pos;
  return {c.state.width() / 2, c.state.height() / 2};
}

void approach(Context& c, const Placed& u, Pos target) {
  if (auto p = step_toward(c.state, u.pos, target, c.rng)) c.order(u, ActionType::move, *p);
}

/// Attack the weakest enemy in range, otherwise walk to the nearest one.
void fight(Context& c, const Placed& u) {
  const int range = c.rules[u.unit.kind].range;
  const Placed* victim = nullptr;
  for (const Placed& e : c.enemies) {
    if (chebyshev(u.pos, e.pos) <= range && (!victim || e.unit.hp < victim->unit.hp)) victim = &e;
  }
  if (victim) {
    c.order(u, ActionType::attack, victim->pos);
  } else if (const Placed* e = nearest(c.enemies, u.pos)) {
    approach(c, u, e->pos);
  }
}

void harvest(Context& c, const Placed& w) {
  if (w.unit.busy > 0) return;
  if (w.unit.resources > 0) {
    const auto bases = c.mine_of(UnitKind::base);
    const Placed* base = nearest(bases, w.pos);
    if (!base) return fight(c, w);
    if (chebyshev(w.pos, base->pos) == 1) return c.order(w, ActionType::deposit, base->pos);
    return approach(c, w, base->pos);
  }
  const Placed* res = nearest(c.resources, w.pos);
  if (!res) return fight(c, w);
  if (chebyshev(w.pos, res->pos) == 1) return c.order(w, ActionType::harvest, res->pos);
  approach(c, w, res->pos);
}

bool train(Context& c, const Placed& building, UnitKind kind) {
  const int cost = c.rules[kind].cost;
  if (building.unit.busy > 0 || c.budget < cost) return false;
  const auto cell = spawn_cell(c.state, building.pos, enemy_focus(c), c.rng);
  if (!cell) return false;
  c.budget -= cost;
  c.order(building, ActionType::train, *cell, kind);
  return true;
}

bool build_barracks(Context& c, const Placed& worker) {
  const int cost = c.rules[UnitKind::barracks].cost;
  if (worker.unit.busy > 0 || c.budget < cost) return false;
  const auto cell = spawn_cell(c.state, worker.pos, {c.state.width() / 2, c.state.height() / 2}, c.rng);
  if (!cell) return false;
  c.budget -= cost;
  c.order(worker, ActionType::build, *cell, UnitKind::barracks);
  return true;
}

class PassiveLite final : public Strategy {
 public:
  std::string_view name() const override { return "PassiveLite"; }
  void decide(const GameState&, Owner, const SimRules&, Rng&, std::vector<Action>&) override {}
};

class WorkerRushLite final : public Strategy {
 public:
  std::string_view name() const override { return "WorkerRushLite"; }
  void decide(const GameState& s, Owner me, const SimRules& rules, Rng& rng, std::vector<Action>& out) override {
    Context c(s, me, rules, rng, out);
    const auto workers = c.mine_of(UnitKind::worker);
    for (std::size_t i = 0; i < workers.size(); ++i) {
      if (i == 0 && !c.resources.empty()) {
        harvest(c, workers[i]);
      } else {
        fight(c, workers[i]);
      }
    }
    for (const Placed& b : c.mine_of(UnitKind::base)) train(c, b, UnitKind::worker);
  }
};

/// Two harvesters, one barracks, then a stream of one combat unit type.
class UnitRushLite final : public Strategy {
 public:
  UnitRushLite(std::string_view name, UnitKind kind) : name_(name), kind_(kind) {}
  std::string_view name() const override { return name_; }
  void decide(const GameState& s, Owner me, const SimRules& rules, Rng& rng, std::vector<Action>& out) override {
    Context c(s, me, rules, rng, out);
    const auto workers = c.mine_of(UnitKind::worker);
    const auto barracks = c.mine_of(UnitKind::barracks);
    for (std::size_t i = 0; i < workers.size(); ++i) {
      if (i == 1 && barracks.empty() && build_barracks(c, workers[i])) continue;
      if (i < 2) {
        harvest(c, workers[i]);
      } else {
        fight(c, workers[i]);
      }
    }
    for (const Placed& b : barracks) train(c, b, kind_);
    if (workers.size() < 2) {
      for (const Placed& b : c.mine_of(UnitKind::base)) train(c, b, UnitKind::worker);
    }
    for (const Placed& u : c.mine) {
      if (is_combat(u.unit.kind)) fight(c, u);
    }
  }

 private:
  std::string_view name_;
  UnitKind kind_;
};

/// Four harvesters, then a mixed light/heavy army that attacks once it has
/// three units and otherwise only defends the home area.
class EconomyRushLite final : public Strategy {
 public:
  std::string_view name() const override { return "EconomyRushLite"; }
  void decide(const GameState& s, Owner me, const SimRules& rules, Rng& rng, std::vector<Action>& out) override {
    Context c(s, me, rules, rng, out);
    const auto workers = c.mine_of(UnitKind::worker);
    const auto barracks = c.mine_of(UnitKind::barracks);
    const auto bases = c.mine_of(UnitKind::base);
    for (std::size_t i = 0; i < workers.size(); ++i) {
      if (i == 1 && barracks.empty() && c.budget >= 6 && build_barracks(c, workers[i])) continue;
      harvest(c, workers[i]);
    }
    std::vector<Placed> army;
    for (const Placed& u : c.mine) {
      if (is_combat(u.unit.kind)) army.push_back(u);
    }
    for (const Placed& b : barracks) train(c, b, army.size() % 2 == 0 ? UnitKind::light : UnitKind::heavy);
    if (workers.size() < 4) {
      for (const Placed& b : bases) train(c, b, UnitKind::worker);
    }
    const Pos home = bases.empty() ? Pos{} : bases.front().pos;
    bool threatened = false;
    for (const Placed& e : c.enemies) threatened = threatened || (!bases.empty() && chebyshev(e.pos, home) <= 4);
    if (army.size() >= 3 || threatened || bases.empty()) {
      for (const Placed& u : army) fight(c, u);
    }
  }
};

/// Biased random policy: attacks and harvesting are favoured over wandering.
class RandomBiasedLite final : public Strategy {
 public:
  std::string_view name() const override { return "RandomBiasedLite"; }
  void decide(const GameState& s, Owner me, const SimRules& rules, Rng& rng, std::vector<Action>& out) override {
    Context c(s, me, rules, rng, out);
    constexpr std::array<UnitKind, 3> kCombat{UnitKind::light, UnitKind::heavy, UnitKind::ranged};
    for (const Placed& u : c.mine) {
      switch (u.unit.kind) {
        case UnitKind::base:
          if (rng.chance(0.3)) train(c, u, UnitKind::worker);
          break;
        case UnitKind::barracks:
          if (rng.chance(0.3)) train(c, u, kCombat[rng.below(kCombat.size())]);
          break;
        case UnitKind::worker:
          decide_worker(c, u);
          break;
        default:
          decide_combat(c, u);
          break;
      }
    }
  }

 private:
  static bool enemy_in_range(const Context& c, const Placed& u) {
    for (const Placed& e : c.enemies) {
      if (chebyshev(u.pos, e.pos) <= c.rules[u.unit.kind].range) return true;
    }
    return false;
  }

  static void wander(Context& c, const Placed& u) {
    if (auto p = random_step(c.state, u.pos, c.rng)) c.order(u, ActionType::move, *p);
  }

  static void decide_worker(Context& c, const Placed& u) {
    if (enemy_in_range(c, u) && c.rng.chance(0.8)) return fight(c, u);
    if (c.budget >= 6 && c.rng.chance(0.05) && build_barracks(c, u)) return;
    if (c.rng.chance(0.8)) return harvest(c, u);
    if (c.rng.chance(0.3)) return fight(c, u);
    wander(c, u);
  }

  static void decide_combat(Context& c, const Placed& u) {
    if (enemy_in_range(c, u) && c.rng.chance(0.9)) return fight(c, u);
    if (c.rng.chance(0.6)) return fight(c, u);
    wander(c, u);
  }
};

std::string_view base_name(std::string_view name) { return name.substr(0, name.find('#')); }

}  // namespace

std::vector<std::string> registered_strategies() {
  return {"RandomBiasedLite", "WorkerRushLite", "LightRushLite", "HeavyRushLite",
          "RangedRushLite",   "EconomyRushLite", "PassiveLite"};
}

bool is_registered(std::string_view name) {
  const auto names = registered_strategies();
  return std::find(names.begin(), names.end(), base_name(name)) != names.end();
}

std::unique_ptr<Strategy> make_strategy(std::string_view name) {
  const std::string_view b = base_name(name);
  if (b == "PassiveLite") return std::make_unique<PassiveLite>();
  if (b == "WorkerRushLite") return std::make_unique<WorkerRushLite>();
  if (b == "LightRushLite") return std::make_unique<UnitRushLite>("LightRushLite", UnitKind::light);
  if (b == "HeavyRushLite") return std::make_unique<UnitRushLite>("HeavyRushLite", UnitKind::heavy);
  if (b == "RangedRushLite") return std::make_unique<UnitRushLite>("RangedRushLite", UnitKind::ranged);
  if (b == "EconomyRushLite") return std::make_unique<EconomyRushLite>();
  if (b == "RandomBiasedLite") return std::make_unique<RandomBiasedLite>();
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

}  // namespace tstf::sim
