// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tstf::train {

struct Confusion {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  long tn = 0;
  long total() const { return tp + fp + fn + tn; }
  bool operator==(const Confusion&) const = default;
};

/// Label 1 is the positive class (player 1 wins). Zero denominators give 0
/// for precision, recall and F1; op = accuracy + precision + recall + f1.
struct MetricsReport {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double op = 0;
  Confusion confusion;
};

MetricsReport metrics_from_confusion(const Confusion& c);

/// Labels must be 0 or 1 and the spans equally long and non-empty.
MetricsReport compute_metrics(std::span<const int> predicted, std::span<const int> truth);

struct StratifiedRow {
  std::string model;
  double fraction = 1.0;
  MetricsReport metrics;
};

struct StabilityRow {
  std::string model;
  std::optional<double> early;  // population std of op for fraction <= split
  std::optional<double> late;   // fraction > split
};

/// Population standard deviation; 0 for a single value.
double population_std(std::span<const double> values);

/// Groups rows by model (first-seen order) and reports the op spread per
/// phase. A phase with fewer than two points is left empty and a warning is
/// appended to `warnings`.
std::vector<StabilityRow> op_stability(std::span<const StratifiedRow> rows, double split = 0.4,
                                       std::vector<std::string>* warnings = nullptr);

}  // namespace tstf::train
