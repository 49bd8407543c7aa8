// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/baselines/evaluators.hpp"
#include "tstf/model/tstf.hpp"
#include "tstf/sim/match.hpp"
#include "tstf/train/adamw.hpp"
#include "tstf/train/metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace tstf::train {

struct TrainConfig {
  AdamWConfig optimizer;
  int batch_size = 2;
  int epochs = 10;
  std::uint64_t seed = 0;
  double threshold = 0.5;
  int threads = 1;  // evaluation only

  void validate() const;
};

/// One model input with its label (1 when player 1 won).
struct Example {
  std::uint64_t match_id = 0;
  Tensor input;  // [T, C, H, W]
  int label = 0;
};

/// Label of a decided match; draws raise ContractError.
int label_of(const sim::MatchRecord& record);

/// Full-match inputs (progress 1.0) for every decided match; draws skipped.
std::vector<Example> make_examples(std::span<const sim::MatchRecord> matches, int time_steps, double progress = 1.0);

struct EpochLog {
  int epoch = 0;
  double train_loss = 0;
  double train_accuracy = 0;
  double val_accuracy = 0;
};

struct TrainResult {
  std::vector<EpochLog> log;
  model::ModelParams best;  // deep copy taken at the best validation epoch
  int best_epoch = 0;
  double best_val_accuracy = 0;
};

/// Mini-batch training with AdamW on the mean BCE. Each epoch shuffles the
/// training set with a generator derived from (seed, epoch). Row 0 of the log
/// scores the initial parameters; later rows report the running loss and
/// accuracy over the epoch's batches and the validation accuracy after it.
/// The first epoch with the highest validation accuracy is kept as `best`.
TrainResult train(const model::ModelConfig& config, model::ModelParams& params, std::span<const Example> train_set,
                  std::span<const Example> val_set, const TrainConfig& tc,
                  const std::function<void(const EpochLog&)>& on_epoch = {});

/// Win probabilities for every example on an inference tape, computed by up to
/// `threads` workers in fixed chunks (results do not depend on the count).
std::vector<double> predict(const model::ModelConfig& config, const model::ModelParams& params,
                            std::span<const Example> examples, int threads = 1);

/// Mean BCE of given probabilities.
double mean_bce(std::span<const double> probabilities, std::span<const Example> examples);

MetricsReport score(std::span<const double> probabilities, std::span<const Example> examples, double threshold = 0.5);

std::vector<double> default_fractions();

/// For each fraction, re-samples every decided match at that progress and
/// scores the model against the final winner.
std::vector<StratifiedRow> stratified_eval(const std::string& name, const model::ModelConfig& config,
                                           const model::ModelParams& params,
                                           std::span<const sim::MatchRecord> matches,
                                           std::span<const double> fractions, double threshold = 0.5,
                                           int threads = 1);

/// Classical evaluators score the last frame of each prefix. A predicted draw
/// is counted as the wrong label.
std::vector<StratifiedRow> stratified_eval(baselines::Evaluator evaluator, const baselines::EvalWeights& weights,
                                           std::span<const sim::MatchRecord> matches,
                                           std::span<const double> fractions);

/// Reference figures from the original full-scale experiments. Only the
/// cells that were published are set.
struct ReferencePoint {
  std::string model;
  double fraction = 0;
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
};
std::vector<ReferencePoint> reference_accuracy();
std::vector<StabilityRow> reference_stability();

// Comma-separated writers. Every file starts with its header row.
void write_log_csv(const std::filesystem::path& path, std::span<const EpochLog> log);
void write_metrics_csv(const std::filesystem::path& path, const std::string& model, const MetricsReport& m);
/// Header: source,model,fraction,accuracy,precision,recall,f1,op,tp,fp,fn,tn
/// Reference rows carry source=paper and leave unpublished cells empty.
void write_stratified_csv(const std::filesystem::path& path, std::span<const StratifiedRow> rows,
                          std::span<const ReferencePoint> reference = {});
/// Header: source,model,early_op_std,late_op_std
void write_stability_csv(const std::filesystem::path& path, std::span<const StabilityRow> ours,
                         std::span<const StabilityRow> reference = {});

}  // namespace tstf::train
