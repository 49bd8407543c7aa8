// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/sim/tournament.hpp"

#include "tstf/core/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace tstf::sim {

std::vector<ScheduledMatch> plan_tournament(std::span<const std::string> roster, int rounds_per_pair,
                                            std::uint64_t seed) {
  if (roster.size() < 2) throw ContractError("a tournament needs at least two strategies");
  if (rounds_per_pair <= 0 || rounds_per_pair % 2 != 0) {
    throw ContractError("rounds_per_pair must be positive and even, got " + std::to_string(rounds_per_pair));
  }
  std::vector<ScheduledMatch> plan;
  plan.reserve(roster.size() * (roster.size() - 1) / 2 * static_cast<std::size_t>(rounds_per_pair));
  std::size_t pair = 0;
  for (std::size_t i = 0; i < roster.size(); ++i) {
    for (std::size_t j = i + 1; j < roster.size(); ++j, ++pair) {
      for (int r = 0; r < rounds_per_pair; ++r) {
        const bool swapped = r >= rounds_per_pair / 2;
        plan.push_back({pair, r, swapped ? roster[j] : roster[i], swapped ? roster[i] : roster[j],
                        Rng::derive(seed, pair, static_cast<std::uint64_t>(r)), swapped});
      }
    }
  }
  return plan;
}

Dataset run_tournament(std::span<const std::string> roster, int rounds_per_pair, std::uint64_t seed,
                       const SimConfig& config, int threads) {
  for (const std::string& name : roster) {
    if (!is_registered(name)) throw ConfigError("unknown strategy '" + name + "'");
  }
  const auto plan = plan_tournament(roster, rounds_per_pair, seed);
  Dataset ds;
  ds.header.width = config.width;
  ds.header.height = config.height;
  ds.header.capture_every = config.capture_every;
  ds.header.max_steps = config.max_steps;
  ds.matches.resize(plan.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < plan.size(); k = next++) {
      MatchRecord rec = run_match(plan[k].p1, plan[k].p2, plan[k].seed, config);
      rec.id = k;
      ds.matches[k] = std::move(rec);
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(plan.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return ds;
}

std::array<std::size_t, 3> apportion(std::size_t n, const std::array<double, 3>& ratios) {
  const double total = ratios[0] + ratios[1] + ratios[2];
  if (!(total > 0.0) || *std::min_element(ratios.begin(), ratios.end()) < 0.0) {
    throw ContractError("split ratios must be non-negative with a positive sum");
  }
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> rem{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double quota = static_cast<double>(n) * ratios[i] / total;
    // Snap quotas that are integral up to rounding noise.
    const double snapped = std::abs(quota - std::round(quota)) < 1e-9 ? std::round(quota) : quota;
    sizes[i] = static_cast<std::size_t>(std::floor(snapped));
    rem[i] = snapped - std::floor(snapped);
    assigned += sizes[i];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++sizes[order[k % 3]];
  return sizes;
}

DatasetSplit split_dataset(std::span<const MatchRecord> matches, const std::array<double, 3>& ratios,
                           std::uint64_t seed) {
  if (matches.empty()) throw ContractError("cannot split an empty dataset");
  DatasetSplit split;
  std::vector<std::uint64_t> ids;
  for (const MatchRecord& m : matches) {
    if (m.winner == Winner::draw) {
      ++split.draws_excluded;
    } else {
      ids.push_back(m.id);
    }
  }
  Rng rng(seed);
  for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
  const auto sizes = apportion(ids.size(), ratios);
  auto take = [&, pos = std::size_t{0}](std::size_t count) mutable {
    std::vector<std::uint64_t> out(ids.begin() + static_cast<std::ptrdiff_t>(pos),
                                   ids.begin() + static_cast<std::ptrdiff_t>(pos + count));
    pos += count;
    std::sort(out.begin(), out.end());
    return out;
  };
  split.train = take(sizes[0]);
  split.test = take(sizes[1]);
  split.validation = take(sizes[2]);
  return split;
}

std::size_t relabel_by_survivors(Dataset& dataset) {
  std::size_t changed = 0;
  for (MatchRecord& m : dataset.matches) {
    if (m.frames.empty()) throw ContractError("match " + std::to_string(m.id) + " has no frames");
    const Frame& last = m.frames.back();
    const Winner w = survivor_winner(decode_state(last.planes, last.step));
    changed += w != m.winner;
    m.winner = w;
  }
  return changed;
}

std::vector<MatchRecord> select_matches(const Dataset& dataset, std::span<const std::uint64_t> ids) {
  std::unordered_map<std::uint64_t, std::size_t> where;
  for (std::size_t i = 0; i < dataset.matches.size(); ++i) where[dataset.matches[i].id] = i;
  std::vector<MatchRecord> out;
  out.reserve(ids.size());
  for (std::uint64_t id : ids) {
    auto it = where.find(id);
    if (it == where.end()) throw ContractError("match id " + std::to_string(id) + " not in dataset");
    out.push_back(dataset.matches[it->second]);
  }
  return out;
}

}  // namespace tstf::sim
