// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/sim/match.hpp"

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tstf::sim {

struct ScheduledMatch {
  std::size_t pair = 0;
  int round = 0;
  std::string p1;
  std::string p2;
  std::uint64_t seed = 0;
  bool swapped = false;
};

/// Round-robin schedule: pairs (i < j) in roster order, rounds 0..R-1 per pair;
/// the second half of each pair's rounds swaps sides. Seeds derive from
/// (seed, pair, round). rounds_per_pair must be even and positive.
std::vector<ScheduledMatch> plan_tournament(std::span<const std::string> roster, int rounds_per_pair,
                                            std::uint64_t seed);

struct DatasetHeader {
  int version = 1;
  int width = 16;
  int height = 16;
  int channels = kPlanes;
  int capture_every = 2;
  int max_steps = 1000;
  bool operator==(const DatasetHeader&) const = default;
};

struct Dataset {
  DatasetHeader header;
  std::vector<MatchRecord> matches;  // ids equal positions
};

/// Plays the whole schedule. Matches may run on `threads` workers; results are
/// merged in schedule order so the dataset does not depend on the thread count.
Dataset run_tournament(std::span<const std::string> roster, int rounds_per_pair, std::uint64_t seed,
                       const SimConfig& config = {}, int threads = 1);

struct DatasetSplit {
  std::vector<std::uint64_t> train;
  std::vector<std::uint64_t> test;
  std::vector<std::uint64_t> validation;
  std::size_t draws_excluded = 0;
};

/// Largest-remainder apportionment of n items over the ratios; ties in the
/// remainder go to the earlier slot.
std::array<std::size_t, 3> apportion(std::size_t n, const std::array<double, 3>& ratios);

/// Drops draws, shuffles the rest with `seed`, and cuts train/test/validation
/// by apportion(). Id lists come back sorted.
DatasetSplit split_dataset(std::span<const MatchRecord> matches, const std::array<double, 3>& ratios = {10, 5, 2.5},
                           std::uint64_t seed = 0);

/// Replaces every winner with the side holding more units in the match's
/// final frame (equal counts draw). Returns how many labels changed.
std::size_t relabel_by_survivors(Dataset& dataset);

std::vector<MatchRecord> select_matches(const Dataset& dataset, std::span<const std::uint64_t> ids);

// Line-delimited JSON. Line 1 is the header object
//   {"format":"tstf-dataset","version":1,"width":16,"height":16,"channels":5,
//    "capture_every":2,"max_steps":1000}
// and every further line is one match
//   {"id":..,"strategy_a":..,"strategy_b":..,"seed":..,"winner":"p1|p2|draw",
//    "duration":..,"frames":[{"step":..,"planes":[C][H][W] raw ints},..]}
void write_dataset(const std::filesystem::path& path, const Dataset& dataset);
Dataset read_dataset(const std::filesystem::path& path);

void write_split(const std::filesystem::path& path, const DatasetSplit& split);
DatasetSplit read_split(const std::filesystem::path& path);

}  // namespace tstf::sim
