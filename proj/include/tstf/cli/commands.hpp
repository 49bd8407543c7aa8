// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/cli/run_config.hpp"

#include <iosfwd>

namespace tstf::cli {

inline constexpr int kExitOk = 0;
/// A referenced artifact is missing or unreadable, or an output path cannot be written.
inline constexpr int kExitArtifact = 2;
/// The configuration is invalid or the selected data is empty.
inline constexpr int kExitConfig = 3;

// Each command validates its configuration and every path before doing any
// work, writes only below `config.out`, reports progress and errors on `log`,
// and returns an exit code. Outputs are byte-identical for identical inputs.

/// Runs the tournament and writes dataset.jsonl and split.json.
int cmd_generate(const RunConfig& config, std::ostream& log);

/// Trains on the train split, selects on validation; writes model.ckpt,
/// model.ckpt.json and train_log.csv.
int cmd_train(const RunConfig& config, std::ostream& log);

/// Scores a checkpoint on the test split; writes metrics.csv.
int cmd_eval(const RunConfig& config, std::ostream& log);

/// Progress-stratified table for the TSTF checkpoint, the SpaceTimeOnly
/// checkpoint and both classical evaluators, with reference rows; writes
/// compare.csv and stability.csv.
int cmd_compare(const RunConfig& config, std::ostream& log);

/// Per-frame predictions of every available evaluator on one match; writes
/// timeline_<id>.csv.
int cmd_timeline(const RunConfig& config, std::ostream& log);

}  // namespace tstf::cli
