// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/train/trainer.hpp"

#include "tstf/core/errors.hpp"
#include "tstf/core/ops.hpp"
#include "tstf/core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <thread>

namespace tstf::train {
namespace {

Tensor batch_input(std::span<const Example> examples, std::span<const std::size_t> order) {
  std::vector<Tensor> xs;
  xs.reserve(order.size());
  for (std::size_t i : order) xs.push_back(examples[i].input);
  return model::stack(xs);
}

model::ModelParams deep_copy(const model::ModelConfig& config, const model::ModelParams& params) {
  model::ModelParams copy = model::init_params(config, 0);
  const auto src = params.named();
  auto dst = copy.named();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i].tensor.mutable_data() = src[i].tensor.data();
  return copy;
}

int to_label(double p, double threshold) { return p >= threshold ? 1 : 0; }

// Runs fn(i) for i in [0, n) on up to `threads` workers with static chunks.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.precision(6);
  out << std::fixed;
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

void TrainConfig::validate() const {
  optimizer.validate();
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (epochs < 0) throw ConfigError("epochs must be >= 0");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("threshold must lie in (0, 1)");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

int label_of(const sim::MatchRecord& record) {
  if (record.winner == sim::Winner::draw) throw ContractError("match " + std::to_string(record.id) + " is a draw");
  return record.winner == sim::Winner::p1 ? 1 : 0;
}

std::vector<Example> make_examples(std::span<const sim::MatchRecord> matches, int time_steps, double progress) {
  std::vector<Example> out;
  for (const sim::MatchRecord& m : matches) {
    if (m.winner == sim::Winner::draw) continue;
    out.push_back({m.id, sim::sample_timeline(m, time_steps, progress), label_of(m)});
  }
  return out;
}

std::vector<double> predict(const model::ModelConfig& config, const model::ModelParams& params,
                            std::span<const Example> examples, int threads) {
  std::vector<double> out(examples.size());
  parallel_for(examples.size(), threads, [&](std::size_t i) {
    Tape tape = Tape::inference();
    const Tensor x = examples[i].input;
    Shape shape{1};
    shape.insert(shape.end(), x.shape().begin(), x.shape().end());
    out[i] = model::forward(tape, config, params, Tensor(shape, x.data())).item();
  });
  return out;
}

double mean_bce(std::span<const double> probabilities, std::span<const Example> examples) {
  if (probabilities.size() != examples.size() || examples.empty()) throw ContractError("bce over mismatched sets");
  double total = 0.0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const double p = std::clamp(probabilities[i], 1e-12, 1.0 - 1e-12);
    total -= examples[i].label == 1 ? std::log(p) : std::log(1.0 - p);
  }
  return total / static_cast<double>(examples.size());
}

MetricsReport score(std::span<const double> probabilities, std::span<const Example> examples, double threshold) {
  std::vector<int> pred(examples.size());
  std::vector<int> truth(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    pred[i] = to_label(probabilities[i], threshold);
    truth[i] = examples[i].label;
  }
  return compute_metrics(pred, truth);
}

TrainResult train(const model::ModelConfig& config, model::ModelParams& params, std::span<const Example> train_set,
                  std::span<const Example> val_set, const TrainConfig& tc,
                  const std::function<void(const EpochLog&)>& on_epoch) {
  tc.validate();
  if (train_set.empty() || val_set.empty()) throw ContractError("training needs non-empty train and validation sets");
  std::vector<Tensor> tensors;
  for (const NamedTensor& nt : params.named()) tensors.push_back(nt.tensor);
  AdamW opt(tensors, tc.optimizer);

  TrainResult result;
  auto val_accuracy = [&] { return score(predict(config, params, val_set, tc.threads), val_set, tc.threshold).accuracy; };
  {
    const auto p = predict(config, params, train_set, tc.threads);
    EpochLog row{0, mean_bce(p, train_set), score(p, train_set, tc.threshold).accuracy, val_accuracy()};
    result.log.push_back(row);
    result.best = deep_copy(config, params);
    result.best_val_accuracy = row.val_accuracy;
    if (on_epoch) on_epoch(row);
  }

  std::vector<std::size_t> order(train_set.size());
  for (int epoch = 1; epoch <= tc.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(Rng::derive(tc.seed, static_cast<std::uint64_t>(epoch)));
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    double loss_sum = 0.0;
    long correct = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(tc.batch_size)) {
      const std::size_t count = std::min(order.size() - start, static_cast<std::size_t>(tc.batch_size));
      const std::span<const std::size_t> idx(order.data() + start, count);
      std::vector<double> labels(count);
      for (std::size_t k = 0; k < count; ++k) labels[k] = train_set[idx[k]].label;

      Tape tape;
      const Tensor y = model::forward(tape, config, params, batch_input(train_set, idx));
      const Tensor loss = bce_loss(tape, y, labels);
      opt.zero_grad();
      tape.backward(loss);
      opt.step();

      loss_sum += loss.item() * static_cast<double>(count);
      for (std::size_t k = 0; k < count; ++k) correct += to_label(y[static_cast<Index>(k)], tc.threshold) == static_cast<int>(labels[k]);
    }
    const double n = static_cast<double>(train_set.size());
    EpochLog row{epoch, loss_sum / n, static_cast<double>(correct) / n, val_accuracy()};
    result.log.push_back(row);
    if (row.val_accuracy > result.best_val_accuracy) {
      result.best_val_accuracy = row.val_accuracy;
      result.best_epoch = epoch;
      result.best = deep_copy(config, params);
    }
    if (on_epoch) on_epoch(row);
  }
  return result;
}

std::vector<double> default_fractions() { return {0.04, 0.2, 0.4, 0.6, 0.8, 1.0}; }

std::vector<StratifiedRow> stratified_eval(const std::string& name, const model::ModelConfig& config,
                                           const model::ModelParams& params,
                                           std::span<const sim::MatchRecord> matches,
                                           std::span<const double> fractions, double threshold, int threads) {
  std::vector<StratifiedRow> rows;
  for (double f : fractions) {
    const auto examples = make_examples(matches, config.time_steps, f);
    if (examples.empty()) throw ContractError("empty dataset");
    rows.push_back({name, f, score(predict(config, params, examples, threads), examples, threshold)});
  }
  return rows;
}

std::vector<StratifiedRow> stratified_eval(baselines::Evaluator evaluator, const baselines::EvalWeights& weights,
                                           std::span<const sim::MatchRecord> matches,
                                           std::span<const double> fractions) {
  std::vector<StratifiedRow> rows;
  for (double f : fractions) {
    std::vector<int> pred;
    std::vector<int> truth;
    for (const sim::MatchRecord& m : matches) {
      if (m.winner == sim::Winner::draw) continue;
      const sim::Frame& frame = m.frames[sim::prefix_frame_count(m, f) - 1];
      const sim::Winner w =
          baselines::predict_winner_classical(sim::decode_state(frame.planes, frame.step), evaluator, weights);
      const int t = label_of(m);
      truth.push_back(t);
      pred.push_back(w == sim::Winner::draw ? 1 - t : (w == sim::Winner::p1 ? 1 : 0));
    }
    if (truth.empty()) throw ContractError("empty dataset");
    rows.push_back({std::string(baselines::evaluator_name(evaluator)), f, compute_metrics(pred, truth)});
  }
  return rows;
}

std::vector<ReferencePoint> reference_accuracy() {
  return {
      {"tstf-8", 0.04, 0.587, std::nullopt, std::nullopt},
      {"tstf-8", 0.2, 0.833, 0.829, 0.827},
      {"tstf-8", 0.4, 0.976, std::nullopt, std::nullopt},
      {"timesformer-12", 0.04, 0.418, std::nullopt, std::nullopt},
      {"timesformer-12", 0.2, 0.773, std::nullopt, std::nullopt},
      {"timesformer-12", 0.4, 0.962, std::nullopt, std::nullopt},
      {"tstf-6", 0.04, 0.582, std::nullopt, std::nullopt},
      {"tstf-6", 0.2, 0.782, std::nullopt, std::nullopt},
      {"tstf-6", 0.4, 0.938, std::nullopt, std::nullopt},
  };
}

std::vector<StabilityRow> reference_stability() {
  return {
      {"tstf-8", 0.947, 0.114},
      {"timesformer-12", 1.842, 0.186},
      {"tstf-6", 1.253, 0.167},
      {"simple", 0.324, 0.283},
      {"lanchester", 0.298, 0.271},
  };
}

void write_log_csv(const std::filesystem::path& path, std::span<const EpochLog> log) {
  auto out = open_csv(path);
  out << "epoch,train_loss,train_accuracy,val_accuracy\n";
  for (const EpochLog& r : log) {
    out << r.epoch << ',' << r.train_loss << ',' << r.train_accuracy << ',' << r.val_accuracy << '\n';
  }
  finish(out, path);
}

void write_metrics_csv(const std::filesystem::path& path, const std::string& model, const MetricsReport& m) {
  auto out = open_csv(path);
  out << "model,accuracy,precision,recall,f1,op,tp,fp,fn,tn\n";
  out << model << ',' << m.accuracy << ',' << m.precision << ',' << m.recall << ',' << m.f1 << ',' << m.op << ','
      << m.confusion.tp << ',' << m.confusion.fp << ',' << m.confusion.fn << ',' << m.confusion.tn << '\n';
  finish(out, path);
}

void write_stratified_csv(const std::filesystem::path& path, std::span<const StratifiedRow> rows,
                          std::span<const ReferencePoint> reference) {
  auto out = open_csv(path);
  out << "source,model,fraction,accuracy,precision,recall,f1,op,tp,fp,fn,tn\n";
  for (const StratifiedRow& r : rows) {
    const MetricsReport& m = r.metrics;
    out << "ours," << r.model << ',' << r.fraction << ',' << m.accuracy << ',' << m.precision << ',' << m.recall << ','
        << m.f1 << ',' << m.op << ',' << m.confusion.tp << ',' << m.confusion.fp << ',' << m.confusion.fn << ','
        << m.confusion.tn << '\n';
  }
  auto cell = [&](const std::optional<double>& v) {
    if (v) out << *v;
  };
  for (const ReferencePoint& p : reference) {
    out << "paper," << p.model << ',' << p.fraction << ',';
    cell(p.accuracy);
    out << ',';
    cell(p.precision);
    out << ',';
    cell(p.recall);
    out << ",,,,,,\n";
  }
  finish(out, path);
}

void write_stability_csv(const std::filesystem::path& path, std::span<const StabilityRow> ours,
                         std::span<const StabilityRow> reference) {
  auto out = open_csv(path);
  out << "source,model,early_op_std,late_op_std\n";
  auto emit = [&](const char* source, const StabilityRow& r) {
    out << source << ',' << r.model << ',';
    if (r.early) out << *r.early;
    out << ',';
    if (r.late) out << *r.late;
    out << '\n';
  };
  for (const StabilityRow& r : ours) emit("ours", r);
  for (const StabilityRow& r : reference) emit("paper", r);
  finish(out, path);
}

}  // namespace tstf::train
