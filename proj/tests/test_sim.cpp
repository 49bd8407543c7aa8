// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tstf/core/errors.hpp"
#include "tstf/sim/tournament.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

using namespace tstf;
using namespace tstf::sim;

namespace {

// Issues a fixed order list on the first step only.
class Scripted final : public Strategy {
 public:
  explicit Scripted(std::vector<Action> orders) : orders_(std::move(orders)) {}
  std::string_view name() const override { return "Scripted"; }
  void decide(const GameState&, Owner, const SimRules&, Rng&, std::vector<Action>& out) override {
    out.insert(out.end(), orders_.begin(), orders_.end());
    orders_.clear();
  }

 private:
  std::vector<Action> orders_;
};

Unit unit(UnitKind k, Owner o, int resources = 0) { return Unit{k, max_hp(k), o, resources}; }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tstf_test_sim_" + name);
}

}  // namespace

TEST_CASE("standard start is point symmetric") {
  const GameState s = standard_start();
  CHECK(s.count_units(Owner::p1) == 2);
  CHECK(s.count_units(Owner::p2) == 2);
  for (const Placed& p : s.units()) {
    const auto& mirror = s.at({15 - p.pos.x, 15 - p.pos.y});
    REQUIRE(mirror.has_value());
    CHECK(mirror->kind == p.unit.kind);
    if (p.unit.owner != Owner::neutral) CHECK(mirror->owner == opponent(p.unit.owner));
  }
  CHECK(s.store == std::array<int, 2>{2, 2});
}

TEST_CASE("a worker steps right onto a free cell") {
  GameState s(16, 16);
  s.place({2, 2}, unit(UnitKind::base, Owner::p1));
  s.place({13, 13}, unit(UnitKind::base, Owner::p2));
  const auto id = s.place({3, 4}, unit(UnitKind::worker, Owner::p1));
  Scripted p1({Action{id, {3, 4}, ActionType::move, {4, 4}}});
  Scripted p2({});
  Rng rng(1);
  StepReport report;
  const GameState next = step(s, p1, p2, rng, SimRules::defaults(), &report);
  CHECK(next.step == 1);
  CHECK_FALSE(next.at({3, 4}).has_value());
  REQUIRE(next.at({4, 4}).has_value());
  CHECK(next.at({4, 4})->id == id);
  CHECK(report.applied == 1);
  CHECK(report.dropped == 0);
}

TEST_CASE("illegal orders are dropped without touching the state") {
  GameState s(16, 16);
  s.place({2, 2}, unit(UnitKind::base, Owner::p1));
  s.place({13, 13}, unit(UnitKind::base, Owner::p2));
  const auto w = s.place({3, 4}, unit(UnitKind::worker, Owner::p1));
  s.place({5, 4}, unit(UnitKind::worker, Owner::p2));
  const SimRules rules = SimRules::defaults();

  GameState copy = s;
  CHECK_FALSE(apply_action(copy, Owner::p1, {w, {3, 4}, ActionType::move, {5, 4}}, rules));  // two cells
  CHECK_FALSE(apply_action(copy, Owner::p2, {w, {3, 4}, ActionType::move, {3, 5}}, rules));  // wrong owner
  CHECK_FALSE(apply_action(copy, Owner::p1, {w, {3, 4}, ActionType::attack, {5, 4}}, rules));  // out of range
  CHECK_FALSE(apply_action(copy, Owner::p1, {w, {3, 4}, ActionType::build, {3, 5}, UnitKind::barracks}, rules));
  CHECK(copy == s);

  Scripted p1({Action{w, {3, 4}, ActionType::move, {4, 4}}, Action{w, {4, 4}, ActionType::move, {4, 5}}});
  Scripted p2({});
  Rng rng(3);
  StepReport report;
  step(s, p1, p2, rng, rules, &report);
  CHECK(report.applied == 1);
  CHECK(report.dropped == 1);
}

TEST_CASE("attacks remove units at zero hp and a fallen base ends the match") {
  GameState s(16, 16);
  s.place({2, 2}, unit(UnitKind::base, Owner::p1));
  Unit weak = unit(UnitKind::base, Owner::p2);
  weak.hp = 2;
  s.place({6, 6}, weak);
  const auto h = s.place({5, 5}, unit(UnitKind::heavy, Owner::p1));
  Scripted p1({Action{h, {5, 5}, ActionType::attack, {6, 6}}});
  Scripted p2({});
  Rng rng(0);
  const GameState next = step(s, p1, p2, rng, SimRules::defaults());
  CHECK_FALSE(next.has_base(Owner::p2));
  CHECK(next.has_base(Owner::p1));
}

TEST_CASE("harvest then deposit moves one resource into the store") {
  GameState s(16, 16);
  s.place({2, 2}, unit(UnitKind::base, Owner::p1));
  s.place({13, 13}, unit(UnitKind::base, Owner::p2));
  s.place({0, 3}, unit(UnitKind::resource, Owner::neutral, 25));
  const auto w = s.place({1, 3}, unit(UnitKind::worker, Owner::p1));
  const SimRules rules = SimRules::defaults();
  REQUIRE(apply_action(s, Owner::p1, {w, {1, 3}, ActionType::harvest, {0, 3}}, rules));
  CHECK(s.at({1, 3})->resources == 1);
  CHECK(s.at({0, 3})->resources == 24);
  CHECK(s.at({1, 3})->busy == rules.harvest_time);
  REQUIRE(apply_action(s, Owner::p1, {w, {1, 3}, ActionType::deposit, {2, 2}}, rules));
  CHECK(s.store_of(Owner::p1) == 1);
  CHECK(s.at({1, 3})->resources == 0);
}

TEST_CASE("two passive scripts time out in a draw") {
  const MatchRecord r = run_match("PassiveLite", "PassiveLite", 42);
  CHECK(r.winner == Winner::draw);
  CHECK(r.duration == 1000);
  CHECK(r.frames.back().step == 1000);
  CHECK(r.frames.size() == 500);
}

TEST_CASE("worker rush beats passive play from either side") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CAPTURE(seed);
    CHECK(run_match("WorkerRushLite", "PassiveLite", seed).winner == Winner::p1);
    CHECK(run_match("PassiveLite", "WorkerRushLite", seed).winner == Winner::p2);
  }
}

TEST_CASE("mirror matchups favor neither side") {
  for (const std::string& a : registered_strategies()) {
    if (a == "PassiveLite") continue;
    int p1 = 0;
    int decided = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Winner w = run_match(a, a + "#b", seed).winner;
      p1 += w == Winner::p1;
      decided += w != Winner::draw;
    }
    CAPTURE(a);
    CAPTURE(decided);
    // Binomial(decided, 1/2) stays within three standard deviations.
    CHECK(std::abs(p1 - decided / 2.0) <= 3.0 * std::sqrt(decided / 4.0));
  }
}

TEST_CASE("matches are reproducible from their seed") {
  for (const std::string& a : registered_strategies()) {
    CAPTURE(a);
    const MatchRecord x = run_match(a, "RandomBiasedLite", 7);
    const MatchRecord y = run_match(a, "RandomBiasedLite", 7);
    CHECK(x == y);
  }
}

TEST_CASE("frame steps increase and respect the capture interval") {
  const MatchRecord r = run_match("LightRushLite", "EconomyRushLite", 5);
  REQUIRE(!r.frames.empty());
  for (std::size_t i = 0; i < r.frames.size(); ++i) {
    const int st = r.frames[i].step;
    if (i > 0) CHECK(st > r.frames[i - 1].step);
    CHECK((st % 2 == 0 || st == r.duration));
  }
  CHECK(r.frames.back().step == r.duration);
}

TEST_CASE("unit ids are never duplicated and hp stays within bounds") {
  // Property over many random steps from the opening.
  const SimRules rules = SimRules::defaults();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto a = make_strategy("RandomBiasedLite");
    auto b = make_strategy("EconomyRushLite");
    Rng rng(seed);
    GameState s = standard_start();
    for (int t = 0; t < 200 && s.has_base(Owner::p1) && s.has_base(Owner::p2); ++t) {
      const GameState prev = s;
      s = step(s, *a, *b, rng, rules);
      std::set<std::uint32_t> ids;
      for (const Placed& p : s.units()) {
        CHECK(ids.insert(p.unit.id).second);
        CHECK(p.unit.hp >= 1);
        CHECK(p.unit.hp <= max_hp(p.unit.kind));
        CHECK(p.unit.id < s.next_id());
      }
      // Units only appear through production, which needs a producer of the same owner.
      for (Owner o : {Owner::p1, Owner::p2}) {
        const int created = s.count_units(o) - prev.count_units(o);
        const auto owned = prev.units_of(o);
        const int producers = static_cast<int>(std::count_if(owned.begin(), owned.end(), [](const Placed& p) {
          return p.unit.kind == UnitKind::base || p.unit.kind == UnitKind::barracks || p.unit.kind == UnitKind::worker;
        }));
        CHECK(created <= producers);
        CHECK(s.store_of(o) >= 0);
        CHECK(s.store_of(o) <= rules.max_store);
      }
    }
  }
}

TEST_CASE("encoding scales each plane into [0, 1]") {
  GameState s(16, 16);
  s.place({3, 4}, unit(UnitKind::worker, Owner::p1));
  s.place({0, 0}, unit(UnitKind::resource, Owner::neutral, 25));
  s.place({9, 9}, unit(UnitKind::base, Owner::p2));
  s.store_of(Owner::p2) = 5;
  const StateTensor t = encode_state(s);
  CHECK(t.at(Plane::type, 3, 4) == doctest::Approx(4.0 / 7.0));
  CHECK(t.at(Plane::health, 3, 4) == doctest::Approx(1.0 / 10.0));
  CHECK(t.at(Plane::faction, 3, 4) == doctest::Approx(1.0 / 2.0));
  CHECK(t.at(Plane::neutral_resources, 0, 0) == doctest::Approx(1.0));
  CHECK(t.at(Plane::faction_resources, 9, 9) == doctest::Approx(5.0 / 25.0));
  CHECK(t.at(Plane::type, 5, 5) == 0.0);
  CHECK(t.values.minCoeff() >= 0.0);
  CHECK(t.values.maxCoeff() <= 1.0);
}

TEST_CASE("decoding a raw frame restores the visible state") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const MatchRecord r = run_match("EconomyRushLite", "RangedRushLite", seed);
    for (const Frame& f : r.frames) {
      const GameState s = decode_state(f.planes, f.step);
      CHECK(encode_raw(s) == f.planes);
    }
  }
}

TEST_CASE("timeline indices round to the nearest frame") {
  CHECK(timeline_indices(10, 5) == std::vector<std::size_t>{0, 2, 5, 7, 9});
  CHECK(timeline_indices(10, 1) == std::vector<std::size_t>{9});
  CHECK(timeline_indices(3, 5) == std::vector<std::size_t>{0, 1, 1, 2, 2});
  CHECK(timeline_indices(1, 4) == std::vector<std::size_t>{0, 0, 0, 0});
  for (std::size_t p = 1; p < 40; ++p) {
    for (int t = 1; t < 12; ++t) {
      const auto idx = timeline_indices(p, t);
      CHECK(std::is_sorted(idx.begin(), idx.end()));
      CHECK(idx.back() == p - 1);
      if (t > 1) CHECK(idx.front() == 0);
    }
  }
}

TEST_CASE("sampled timelines only see the requested prefix") {
  const MatchRecord r = run_match("HeavyRushLite", "LightRushLite", 2);
  const Tensor x = sample_timeline(r, 8, 0.2);
  CHECK(x.shape() == Shape{8, 5, 16, 16});
  const std::size_t prefix = prefix_frame_count(r, 0.2);
  CHECK(r.frames[prefix - 1].step <= static_cast<int>(std::ceil(0.2 * r.duration)));
  const Tensor last = sample_timeline(r, 1, 0.2);
  const StateTensor expect = normalize(r.frames[prefix - 1].planes);
  CHECK(last.data().isApprox(expect.values));
  CHECK_THROWS_AS(sample_timeline(r, 8, 0.0), ContractError);
}

TEST_CASE("apportion uses the largest remainder") {
  CHECK(apportion(3150, {10, 5, 2.5}) == std::array<std::size_t, 3>{1800, 900, 450});
  CHECK(apportion(7, {10, 5, 2.5}) == std::array<std::size_t, 3>{4, 2, 1});
  CHECK(apportion(0, {10, 5, 2.5}) == std::array<std::size_t, 3>{0, 0, 0});
  for (std::size_t n = 0; n < 200; ++n) {
    const auto s = apportion(n, {10, 5, 2.5});
    CHECK(s[0] + s[1] + s[2] == n);
    for (std::size_t i = 0; i < 3; ++i) {
      const double quota = static_cast<double>(n) * std::array{10.0, 5.0, 2.5}[i] / 17.5;
      CHECK(std::abs(static_cast<double>(s[i]) - quota) < 1.0);
    }
  }
}

TEST_CASE("tournament plans cover every pair with balanced sides") {
  std::vector<std::string> roster;
  for (int i = 0; i < 10; ++i) roster.push_back("S" + std::to_string(i));
  const auto plan = plan_tournament(roster, 70, 9);
  CHECK(plan.size() == 3150);
  std::map<std::pair<std::string, std::string>, int> sides;
  std::set<std::uint64_t> seeds;
  for (const auto& m : plan) {
    ++sides[{m.p1, m.p2}];
    seeds.insert(m.seed);
  }
  CHECK(sides.size() == 90);
  for (const auto& [k, v] : sides) CHECK(v == 35);
  CHECK(seeds.size() == plan.size());

  const std::vector<std::string> two{"A", "B"};
  const auto small = plan_tournament(two, 2, 1);
  REQUIRE(small.size() == 2);
  CHECK(small[0].p1 == "A");
  CHECK(small[1].p1 == "B");
  CHECK(plan_tournament(roster, 12, 1).size() == 45 * 12);
  CHECK_THROWS_AS(plan_tournament(roster, 3, 1), ContractError);
  CHECK_THROWS_AS(plan_tournament(two, 0, 1), ContractError);
}

TEST_CASE("tournaments do not depend on the thread count") {
  const std::vector<std::string> roster{"WorkerRushLite", "LightRushLite", "PassiveLite", "LightRushLite#b"};
  SimConfig cfg;
  cfg.max_steps = 300;
  const Dataset a = run_tournament(roster, 2, 11, cfg, 1);
  const Dataset b = run_tournament(roster, 2, 11, cfg, 3);
  REQUIRE(a.matches.size() == 12);
  CHECK(a.matches == b.matches);
  for (std::size_t i = 0; i < a.matches.size(); ++i) CHECK(a.matches[i].id == i);
  CHECK_THROWS_AS(run_tournament(std::vector<std::string>{"PassiveLite", "Nope"}, 2, 1), ConfigError);
}

TEST_CASE("splits exclude draws, partition the rest, and are seed stable") {
  std::vector<MatchRecord> ms(20);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    ms[i].id = 100 + i;
    ms[i].winner = i % 7 == 0 ? Winner::draw : (i % 2 ? Winner::p1 : Winner::p2);
  }
  const DatasetSplit s = split_dataset(ms, {10, 5, 2.5}, 4);
  CHECK(s.draws_excluded == 3);
  CHECK(s.train.size() + s.test.size() + s.validation.size() == 17);
  CHECK(s.train.size() == 10);
  std::set<std::uint64_t> all;
  for (const auto* part : {&s.train, &s.test, &s.validation}) {
    CHECK(std::is_sorted(part->begin(), part->end()));
    all.insert(part->begin(), part->end());
  }
  CHECK(all.size() == 17);
  for (std::size_t i = 0; i < ms.size(); i += 7) CHECK(all.count(100 + i) == 0);
  const DatasetSplit again = split_dataset(ms, {10, 5, 2.5}, 4);
  CHECK(again.train == s.train);
  CHECK(again.validation == s.validation);
  CHECK_THROWS_AS(split_dataset(std::vector<MatchRecord>{}), ContractError);
}

TEST_CASE("datasets and splits survive a file round trip") {
  const std::vector<std::string> roster{"WorkerRushLite", "RangedRushLite"};
  SimConfig cfg;
  cfg.max_steps = 120;
  const Dataset ds = run_tournament(roster, 2, 3, cfg);
  const auto path = temp_path("dataset.jsonl");
  write_dataset(path, ds);
  const Dataset back = read_dataset(path);
  CHECK(back.header == ds.header);
  CHECK(back.matches == ds.matches);

  const DatasetSplit split = split_dataset(ds.matches, {1, 1, 0}, 2);
  const auto split_path = temp_path("split.json");
  write_split(split_path, split);
  const DatasetSplit split_back = read_split(split_path);
  CHECK(split_back.train == split.train);
  CHECK(split_back.test == split.test);
  CHECK(split_back.validation == split.validation);

  CHECK_THROWS_AS(read_dataset(temp_path("missing.jsonl")), IoError);
  {
    std::ofstream bad(path);
    bad << "{\"format\":\"tstf-dataset\",\"version\":1}\n";
  }
  CHECK_THROWS_AS(read_dataset(path), FormatError);
  std::filesystem::remove(path);
  std::filesystem::remove(split_path);
}
