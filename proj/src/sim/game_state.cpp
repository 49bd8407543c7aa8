// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/sim/game_state.hpp"

#include "tstf/core/errors.hpp"

namespace tstf::sim {

std::string_view kind_name(UnitKind kind) {
  switch (kind) {
    case UnitKind::base: return "base";
    case UnitKind::barracks: return "barracks";
    case UnitKind::resource: return "resource";
    case UnitKind::worker: return "worker";
    case UnitKind::light: return "light";
    case UnitKind::heavy: return "heavy";
    case UnitKind::ranged: return "ranged";
  }
  return "?";
}

SimRules SimRules::defaults() {
  SimRules r;
  //                                      hp  cost dmg range time
  r[UnitKind::base] = UnitStats{max_hp(UnitKind::base), 0, 0, 0, 0};
  r[UnitKind::barracks] = UnitStats{max_hp(UnitKind::barracks), 4, 0, 0, 10};
  r[UnitKind::resource] = UnitStats{max_hp(UnitKind::resource), 0, 0, 0, 0};
  r[UnitKind::worker] = UnitStats{max_hp(UnitKind::worker), 1, 1, 1, 4};
  r[UnitKind::light] = UnitStats{max_hp(UnitKind::light), 2, 2, 1, 6};
  r[UnitKind::heavy] = UnitStats{max_hp(UnitKind::heavy), 3, 4, 1, 10};
  r[UnitKind::ranged] = UnitStats{max_hp(UnitKind::ranged), 2, 1, 3, 6};
  return r;
}

GameState::GameState(int width, int height)
    : width_(width), height_(height), cells_(static_cast<std::size_t>(width * height)) {
  if (width <= 0 || height <= 0) throw ConfigError("map dimensions must be positive");
}

std::uint32_t GameState::place(Pos p, Unit u) {
  if (!is_free(p)) throw ContractError("place: cell occupied or out of bounds");
  u.id = next_id_++;
  cells_[index(p)] = u;
  return u.id;
}

void GameState::move(Pos from, Pos to) {
  cells_[index(to)] = std::move(cells_[index(from)]);
  cells_[index(from)].reset();
}

std::vector<Placed> GameState::units() const {
  std::vector<Placed> out;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (const auto& c = cells_[index({x, y})]) out.push_back({{x, y}, *c});
    }
  }
  return out;
}

std::vector<Placed> GameState::units_of(Owner o) const {
  std::vector<Placed> out;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const auto& c = cells_[index({x, y})];
      if (c && c->owner == o) out.push_back({{x, y}, *c});
    }
  }
  return out;
}

int GameState::count_units(Owner o) const {
  int n = 0;
  for (const auto& c : cells_) n += c && c->owner == o;
  return n;
}

bool GameState::has_base(Owner o) const {
  for (const auto& c : cells_) {
    if (c && c->owner == o && c->kind == UnitKind::base) return true;
  }
  return false;
}

GameState standard_start(int width, int height) {
  GameState s(width, height);
  auto mirror = [&](Pos p) { return Pos{width - 1 - p.x, height - 1 - p.y}; };
  auto both = [&](Pos p1_pos, Unit u) {
    Unit a = u;
    Unit b = u;
    if (u.owner != Owner::neutral) b.owner = Owner::p2;
    s.place(p1_pos, a);
    s.place(mirror(p1_pos), b);
  };
  both({0, 1}, Unit{UnitKind::resource, max_hp(UnitKind::resource), Owner::neutral, 25});
  both({1, 0}, Unit{UnitKind::resource, max_hp(UnitKind::resource), Owner::neutral, 25});
  both({2, 2}, Unit{UnitKind::base, max_hp(UnitKind::base), Owner::p1, 0});
  both({1, 1}, Unit{UnitKind::worker, max_hp(UnitKind::worker), Owner::p1, 0});
  s.store = {2, 2};
  return s;
}

}  // namespace tstf::sim
