// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/model/config.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tstf::cli {

/// Settings shared by every command. A JSON config file supplies any subset of
/// the keys below; command-line flags override it. Relative artifact paths
/// left empty resolve inside `out`.
///
///   out, seed, preset, threads                      common
///   roster, rounds, max_steps, capture_every,
///   split_ratios, labels                            generate
///   dataset, split, epochs, batch_size, lr,
///   weight_decay, model                             train
///   checkpoint, baseline_checkpoint, fractions,
///   match_id                                        eval, compare, timeline
struct RunConfig {
  std::filesystem::path out = "out";
  std::uint64_t seed = 0;
  std::string preset = "desk";
  int threads = 1;

  std::vector<std::string> roster;  // empty: every registered strategy
  int rounds = 12;
  int max_steps = 1000;
  int capture_every = 2;
  std::array<double, 3> split_ratios{10.0, 5.0, 2.5};
  std::string labels = "outcome";  // or "survivors"

  std::filesystem::path dataset;  // default <out>/dataset.jsonl
  std::filesystem::path split;    // default <out>/split.json
  int epochs = 10;
  int batch_size = 2;
  double lr = 1e-4;
  double weight_decay = 0.01;
  std::string model_overrides = "{}";  // JSON object merged over the preset

  std::filesystem::path checkpoint;           // default <out>/model.ckpt
  std::filesystem::path baseline_checkpoint;  // SpaceTimeOnly model for compare / timeline
  std::vector<double> fractions;              // empty: the default grid
  std::optional<std::uint64_t> match_id;

  /// Throws ConfigError naming the first violated field.
  void validate() const;

  std::filesystem::path dataset_path() const;
  std::filesystem::path split_path() const;
  std::filesystem::path checkpoint_path() const;
  std::vector<std::string> roster_or_default() const;
  std::vector<double> fractions_or_default() const;

  /// Preset merged with `model_overrides`, validated.
  model::ModelConfig model_config() const;
};

/// Parses a JSON object into a RunConfig starting from the defaults. Unknown
/// keys and ill-typed values raise ConfigError naming the key.
RunConfig parse_run_config(std::string_view json_text);

/// Reads and parses a config file; a missing file raises IoError.
RunConfig load_run_config(const std::filesystem::path& path);

/// Comma-separated list of numbers ("0.04,0.2,1").
std::vector<double> parse_fraction_list(std::string_view text);

}  // namespace tstf::cli
