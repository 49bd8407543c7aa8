// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/train/metrics.hpp"

#include "tstf/core/errors.hpp"

#include <cmath>
#include <map>

namespace tstf::train {

MetricsReport metrics_from_confusion(const Confusion& c) {
  auto ratio = [](double num, double den) { return den == 0.0 ? 0.0 : num / den; };
  MetricsReport r;
  r.confusion = c;
  r.accuracy = ratio(static_cast<double>(c.tp + c.tn), static_cast<double>(c.total()));
  r.precision = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
  r.recall = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
  r.f1 = ratio(2.0 * r.precision * r.recall, r.precision + r.recall);
  r.op = r.accuracy + r.precision + r.recall + r.f1;
  return r;
}

MetricsReport compute_metrics(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw ContractError("prediction and label counts differ");
  if (predicted.empty()) throw ContractError("cannot score an empty prediction set");
  Confusion c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const int p = predicted[i];
    const int t = truth[i];
    if ((p != 0 && p != 1) || (t != 0 && t != 1)) throw ContractError("labels must be 0 or 1");
    if (p == 1) {
      ++(t == 1 ? c.tp : c.fp);
    } else {
      ++(t == 1 ? c.fn : c.tn);
    }
  }
  return metrics_from_confusion(c);
}

double population_std(std::span<const double> values) {
  if (values.empty()) throw ContractError("standard deviation of an empty series");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

std::vector<StabilityRow> op_stability(std::span<const StratifiedRow> rows, double split,
                                       std::vector<std::string>* warnings) {
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> phases;
  for (const StratifiedRow& r : rows) {
    auto [it, fresh] = phases.try_emplace(r.model);
    if (fresh) order.push_back(r.model);
    (r.fraction <= split ? it->second.first : it->second.second).push_back(r.metrics.op);
  }
  std::vector<StabilityRow> out;
  for (const std::string& model : order) {
    const auto& [early, late] = phases[model];
    StabilityRow row{model, std::nullopt, std::nullopt};
    auto fill = [&](const std::vector<double>& series, std::optional<double>& slot, const char* phase) {
      if (series.size() >= 2) {
        slot = population_std(series);
      } else if (warnings) {
        warnings->push_back(model + ": fewer than two " + phase + " points, spread omitted");
      }
    };
    fill(early, row.early, "early");
    fill(late, row.late, "late");
    out.push_back(row);
  }
  return out;
}

}  // namespace tstf::train
