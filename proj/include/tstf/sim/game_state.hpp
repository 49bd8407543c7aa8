// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace tstf::sim {

/// Entity codes match the type plane of the encoded state.
enum class UnitKind : std::uint8_t { base = 1, barracks = 2, resource = 3, worker = 4, light = 5, heavy = 6, ranged = 7 };
inline constexpr int kUnitKindCount = 7;

enum class Owner : std::uint8_t { neutral = 0, p1 = 1, p2 = 2 };

inline constexpr Owner opponent(Owner o) { return o == Owner::p1 ? Owner::p2 : Owner::p1; }
inline constexpr int player_index(Owner o) { return static_cast<int>(o) - 1; }

std::string_view kind_name(UnitKind kind);

inline constexpr bool is_mobile(UnitKind k) { return k >= UnitKind::worker; }
inline constexpr bool is_combat(UnitKind k) { return k >= UnitKind::light; }
inline constexpr bool is_structure(UnitKind k) { return k == UnitKind::base || k == UnitKind::barracks; }

struct UnitStats {
  int max_hp = 1;
  int cost = 0;
  int damage = 0;
  int range = 0;
  int produce_time = 0;  // steps the producer (or builder) stays busy
};

/// Rule table. Max hp values are the encoded health levels; everything else
/// is a tunable simplification.
struct SimRules {
  std::array<UnitStats, kUnitKindCount + 1> stats{};  // indexed by UnitKind code
  int worker_capacity = 1;
  int harvest_amount = 1;
  int harvest_time = 2;
  int max_store = 25;
  int max_resource_stock = 25;

  const UnitStats& operator[](UnitKind k) const { return stats[static_cast<std::size_t>(k)]; }
  UnitStats& operator[](UnitKind k) { return stats[static_cast<std::size_t>(k)]; }

  static SimRules defaults();
};

inline constexpr int max_hp(UnitKind k) {
  constexpr std::array<int, 8> table{0, 10, 4, 1, 1, 4, 8, 1};
  return table[static_cast<std::size_t>(k)];
}

struct Unit {
  UnitKind kind = UnitKind::worker;
  int hp = 1;
  Owner owner = Owner::neutral;
  /// Carried load for workers, remaining stock for resource cells, 0 otherwise.
  int resources = 0;
  std::uint32_t id = 0;
  int busy = 0;

  bool operator==(const Unit&) const = default;
};

struct Pos {
  int x = 0;
  int y = 0;
  bool operator==(const Pos&) const = default;
};

inline int chebyshev(Pos a, Pos b) {
  const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx > dy ? dx : dy;
}
inline int manhattan(Pos a, Pos b) {
  return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

struct Placed {
  Pos pos;
  Unit unit;
};

/// Grid of optional units plus per-player resource stores.
class GameState {
 public:
  explicit GameState(int width = 16, int height = 16);

  int width() const { return width_; }
  int height() const { return height_; }
  int step = 0;
  std::array<int, 2> store{0, 0};

  bool in_bounds(Pos p) const { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }
  bool is_free(Pos p) const { return in_bounds(p) && !cells_[index(p)].has_value(); }
  const std::optional<Unit>& at(Pos p) const { return cells_[index(p)]; }
  std::optional<Unit>& at(Pos p) { return cells_[index(p)]; }

  /// Places a unit on a free cell, assigning a fresh id. Returns the id.
  std::uint32_t place(Pos p, Unit u);
  void remove(Pos p) { cells_[index(p)].reset(); }
  void move(Pos from, Pos to);

  int& store_of(Owner o) { return store[static_cast<std::size_t>(player_index(o))]; }
  int store_of(Owner o) const { return store[static_cast<std::size_t>(player_index(o))]; }

  /// Units in row-major scan order, optionally filtered by owner.
  std::vector<Placed> units() const;
  std::vector<Placed> units_of(Owner o) const;
  int count_units(Owner o) const;
  bool has_base(Owner o) const;

  std::uint32_t next_id() const { return next_id_; }

  bool operator==(const GameState&) const = default;

 private:
  std::size_t index(Pos p) const { return static_cast<std::size_t>(p.y * width_ + p.x); }

  int width_;
  int height_;
  std::vector<std::optional<Unit>> cells_;
  std::uint32_t next_id_ = 1;
};

/// Default opening: one base, one worker and two 25-stock resource cells per
/// side, point-symmetric about the map centre. Player 1 sits top-left.
GameState standard_start(int width = 16, int height = 16);

}  // namespace tstf::sim
