// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/sim/encoding.hpp"

#include <algorithm>

namespace tstf::sim {

RawFrame encode_raw(const GameState& s) {
  RawFrame f{s.width(), s.height(), std::vector<std::uint8_t>(static_cast<std::size_t>(kPlanes * s.width() * s.height()), 0)};
  auto clamp25 = [](int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 25)); };
  for (const Placed& p : s.units()) {
    const Unit& u = p.unit;
    f.at(Plane::type, p.pos.x, p.pos.y) = static_cast<std::uint8_t>(u.kind);
    f.at(Plane::health, p.pos.x, p.pos.y) = static_cast<std::uint8_t>(std::clamp(u.hp, 0, 10));
    f.at(Plane::faction, p.pos.x, p.pos.y) = static_cast<std::uint8_t>(u.owner);
    if (u.kind == UnitKind::resource || u.kind == UnitKind::worker) {
      f.at(Plane::neutral_resources, p.pos.x, p.pos.y) = clamp25(u.resources);
    }
    if (u.kind == UnitKind::base && u.owner != Owner::neutral) {
      f.at(Plane::faction_resources, p.pos.x, p.pos.y) = clamp25(s.store_of(u.owner));
    }
  }
  return f;
}

StateTensor normalize(const RawFrame& raw) {
  StateTensor t{raw.width, raw.height, Eigen::VectorXd(static_cast<Eigen::Index>(raw.values.size()))};
  const std::size_t plane_size = static_cast<std::size_t>(raw.width * raw.height);
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    t.values[static_cast<Eigen::Index>(i)] = raw.values[i] / kPlaneScale[i / plane_size];
  }
  return t;
}

StateTensor encode_state(const GameState& state) { return normalize(encode_raw(state)); }

GameState decode_state(const RawFrame& raw, int step) {
  GameState s(raw.width, raw.height);
  s.step = step;
  bool store_seen[2] = {false, false};
  for (int y = 0; y < raw.height; ++y) {
    for (int x = 0; x < raw.width; ++x) {
      const int kind = raw.at(Plane::type, x, y);
      if (kind == 0) continue;
      Unit u;
      u.kind = static_cast<UnitKind>(kind);
      u.hp = raw.at(Plane::health, x, y);
      u.owner = static_cast<Owner>(raw.at(Plane::faction, x, y));
      if (u.kind == UnitKind::resource || u.kind == UnitKind::worker) u.resources = raw.at(Plane::neutral_resources, x, y);
      if (u.kind == UnitKind::base && u.owner != Owner::neutral && !store_seen[player_index(u.owner)]) {
        s.store_of(u.owner) = raw.at(Plane::faction_resources, x, y);
        store_seen[player_index(u.owner)] = true;
      }
      s.place({x, y}, u);
    }
  }
  return s;
}

}  // namespace tstf::sim
