// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/cli/commands.hpp"

#include "tstf/baselines/evaluators.hpp"
#include "tstf/core/errors.hpp"
#include "tstf/model/params.hpp"
#include "tstf/sim/tournament.hpp"
#include "tstf/train/trainer.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace tstf::cli {

namespace {

namespace fs = std::filesystem;

// Stream keys for Rng::derive so that every consumer of the run seed draws
// from its own sequence.
constexpr std::uint64_t kSplitStream = 1;
constexpr std::uint64_t kInitStream = 2;
constexpr std::uint64_t kShuffleStream = 3;

template <class Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    fn();
    return kExitOk;
  } catch (const IoError& e) {
    log << "error: " << e.what() << '\n';
    return kExitArtifact;
  } catch (const FormatError& e) {
    log << "error: " << e.what() << '\n';
    return kExitArtifact;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ContractError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DimensionError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

void require_file(const fs::path& path, const std::string& what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw IoError("missing " + what + ": " + path.string());
}

// Creates the output directory and proves it is writable.
void prepare_out(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw IoError("cannot create output directory " + out.string());
  const fs::path probe = out / ".tstf-write-check";
  {
    std::ofstream f(probe);
    if (!f) throw IoError("output directory is not writable: " + out.string());
  }
  fs::remove(probe, ec);
}

std::string model_label(const model::ModelConfig& c) {
  return std::string(model::variant_name(c.variant)) + "-" + std::to_string(c.layers);
}

struct LoadedData {
  sim::Dataset dataset;
  sim::DatasetSplit split;
};

LoadedData load_data(const RunConfig& rc) {
  require_file(rc.dataset_path(), "dataset");
  require_file(rc.split_path(), "split manifest");
  return {sim::read_dataset(rc.dataset_path()), sim::read_split(rc.split_path())};
}

void check_geometry(const model::ModelConfig& c, const sim::DatasetHeader& h) {
  if (c.channels != h.channels || c.height != h.height || c.width != h.width) {
    std::ostringstream os;
    os << "model expects " << c.channels << "x" << c.height << "x" << c.width << " frames but the dataset holds "
       << h.channels << "x" << h.height << "x" << h.width;
    throw ConfigError(os.str());
  }
}

struct LoadedModel {
  model::ModelConfig config;
  model::ModelParams params;
};

void require_checkpoint(const fs::path& path) {
  require_file(path, "checkpoint");
  require_file(fs::path(path.string() + ".json"), "checkpoint config");
}

LoadedModel load_model(const fs::path& path) {
  model::ModelConfig c = model::load_model_config(path);
  return {c, model::load_params(path, c)};
}

std::vector<sim::MatchRecord> decided(std::vector<sim::MatchRecord> matches) {
  std::erase_if(matches, [](const sim::MatchRecord& m) { return m.winner == sim::Winner::draw; });
  return matches;
}

}  // namespace

int cmd_generate(const RunConfig& rc, std::ostream& log) {
  return guarded(log, [&] {
    rc.validate();
    prepare_out(rc.out);
    const auto roster = rc.roster_or_default();
    sim::SimConfig sc;
    sc.max_steps = rc.max_steps;
    sc.capture_every = rc.capture_every;

    const auto plan_size = sim::plan_tournament(roster, rc.rounds, rc.seed).size();
    log << "generating " << plan_size << " matches (" << roster.size() << " strategies, " << rc.rounds
        << " rounds per pair)\n";
    sim::Dataset ds = sim::run_tournament(roster, rc.rounds, rc.seed, sc, rc.threads);
    if (rc.labels == "survivors") {
      log << "relabeled " << sim::relabel_by_survivors(ds) << " matches by surviving units\n";
    }
    const sim::DatasetSplit split =
        sim::split_dataset(ds.matches, rc.split_ratios, Rng::derive(rc.seed, kSplitStream));

    std::size_t p1 = 0;
    for (const auto& m : ds.matches) p1 += m.winner == sim::Winner::p1;
    sim::write_dataset(rc.out / "dataset.jsonl", ds);
    sim::write_split(rc.out / "split.json", split);
    log << "matches " << ds.matches.size() << " (pre-filter): p1 wins " << p1 << ", p2 wins "
        << ds.matches.size() - p1 - split.draws_excluded << ", draws " << split.draws_excluded << '\n';
    log << "split train " << split.train.size() << ", test " << split.test.size() << ", validation "
        << split.validation.size() << '\n';
  });
}

int cmd_train(const RunConfig& rc, std::ostream& log) {
  return guarded(log, [&] {
    rc.validate();
    const model::ModelConfig mc = rc.model_config();
    LoadedData data = load_data(rc);
    prepare_out(rc.out);
    check_geometry(mc, data.dataset.header);

    const auto train_set = train::make_examples(sim::select_matches(data.dataset, data.split.train), mc.time_steps);
    const auto val_set =
        train::make_examples(sim::select_matches(data.dataset, data.split.validation), mc.time_steps);
    if (train_set.empty()) throw ContractError("empty dataset: the train split has no decided matches");
    if (val_set.empty()) throw ContractError("empty dataset: the validation split has no decided matches");

    train::TrainConfig tc;
    tc.optimizer.lr = rc.lr;
    tc.optimizer.weight_decay = rc.weight_decay;
    tc.batch_size = rc.batch_size;
    tc.epochs = rc.epochs;
    tc.seed = Rng::derive(rc.seed, kShuffleStream);
    tc.threads = rc.threads;

    log << "training " << model_label(mc) << (mc.pre_ln ? " (pre-LN)" : "") << " on " << train_set.size()
        << " examples, validating on " << val_set.size() << '\n';
    model::ModelParams params = model::init_params(mc, Rng::derive(rc.seed, kInitStream));
    const train::TrainResult result = train::train(mc, params, train_set, val_set, tc, [&](const train::EpochLog& e) {
      std::ostringstream line;
      line.precision(4);
      line << std::fixed << "epoch " << e.epoch << " loss " << e.train_loss << " train_acc " << e.train_accuracy
           << " val_acc " << e.val_accuracy << '\n';
      log << line.str() << std::flush;
    });
    model::save_model(rc.out / "model.ckpt", mc, result.best);
    train::write_log_csv(rc.out / "train_log.csv", result.log);
    log << "best epoch " << result.best_epoch << " (validation accuracy " << result.best_val_accuracy << ")\n";
  });
}

int cmd_eval(const RunConfig& rc, std::ostream& log) {
  return guarded(log, [&] {
    rc.validate();
    require_checkpoint(rc.checkpoint_path());
    LoadedData data = load_data(rc);
    prepare_out(rc.out);
    const LoadedModel m = load_model(rc.checkpoint_path());
    check_geometry(m.config, data.dataset.header);

    const auto test_set = train::make_examples(sim::select_matches(data.dataset, data.split.test), m.config.time_steps);
    if (test_set.empty()) throw ContractError("empty dataset: the test split has no decided matches");
    const auto report = train::score(train::predict(m.config, m.params, test_set, rc.threads), test_set);
    train::write_metrics_csv(rc.out / "metrics.csv", model_label(m.config), report);
    log << model_label(m.config) << " on " << test_set.size() << " test matches: accuracy " << report.accuracy
        << ", precision " << report.precision << ", recall " << report.recall << ", f1 " << report.f1 << ", op "
        << report.op << '\n';
  });
}

int cmd_compare(const RunConfig& rc, std::ostream& log) {
  return guarded(log, [&] {
    rc.validate();
    if (rc.baseline_checkpoint.empty()) throw ConfigError("compare needs baseline_checkpoint (a SpaceTimeOnly model)");
    require_checkpoint(rc.checkpoint_path());
    require_checkpoint(rc.baseline_checkpoint);
    LoadedData data = load_data(rc);
    prepare_out(rc.out);
    const LoadedModel full = load_model(rc.checkpoint_path());
    const LoadedModel sto = load_model(rc.baseline_checkpoint);
    if (full.config.variant != model::Variant::tstf) throw ConfigError("checkpoint must hold a tstf model");
    if (sto.config.variant != model::Variant::space_time_only) {
      throw ConfigError("baseline_checkpoint must hold a space_time_only model");
    }
    check_geometry(full.config, data.dataset.header);
    check_geometry(sto.config, data.dataset.header);

    const auto test = decided(sim::select_matches(data.dataset, data.split.test));
    if (test.empty()) throw ContractError("empty dataset: the test split has no decided matches");
    const auto fractions = rc.fractions_or_default();

    std::vector<train::StratifiedRow> rows;
    auto append = [&](std::vector<train::StratifiedRow> more) {
      for (auto& r : more) {
        log << r.model << " @ " << r.fraction << ": accuracy " << r.metrics.accuracy << ", op " << r.metrics.op
            << '\n';
        rows.push_back(std::move(r));
      }
    };
    append(train::stratified_eval(model_label(full.config), full.config, full.params, test, fractions, 0.5,
                                  rc.threads));
    append(train::stratified_eval(model_label(sto.config), sto.config, sto.params, test, fractions, 0.5, rc.threads));
    for (auto e : {baselines::Evaluator::simple, baselines::Evaluator::lanchester}) {
      append(train::stratified_eval(e, baselines::EvalWeights::defaults(), test, fractions));
    }
    std::vector<std::string> warnings;
    const auto stability = train::op_stability(rows, 0.4, &warnings);
    for (const auto& w : warnings) log << "warning: " << w << '\n';

    const auto reference = train::reference_accuracy();
    train::write_stratified_csv(rc.out / "compare.csv", rows, reference);
    const auto reference_stab = train::reference_stability();
    train::write_stability_csv(rc.out / "stability.csv", stability, reference_stab);
  });
}

int cmd_timeline(const RunConfig& rc, std::ostream& log) {
  return guarded(log, [&] {
    rc.validate();
    if (!rc.match_id) throw ConfigError("timeline needs match_id");
    std::vector<fs::path> checkpoints{rc.checkpoint_path()};
    if (!rc.baseline_checkpoint.empty()) checkpoints.push_back(rc.baseline_checkpoint);
    for (const auto& c : checkpoints) require_checkpoint(c);
    require_file(rc.dataset_path(), "dataset");
    const sim::Dataset ds = sim::read_dataset(rc.dataset_path());
    prepare_out(rc.out);

    const sim::MatchRecord* match = nullptr;
    for (const auto& m : ds.matches) {
      if (m.id == *rc.match_id) match = &m;
    }
    if (!match) throw ConfigError("match_id " + std::to_string(*rc.match_id) + " is not in the dataset");
    const std::size_t frames = match->frames.size();

    const fs::path path = rc.out / ("timeline_" + std::to_string(*rc.match_id) + ".csv");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out.precision(6);
    out << std::fixed;
    out << "# p1,p2: classical rows hold each side's evaluation; neural rows hold (y, 1 - y) with y the predicted "
           "probability that p1 wins\n";
    out << "evaluator,step,p1,p2,predicted,label\n";
    const std::string_view label = sim::winner_name(match->winner);

    for (const auto& ckpt : checkpoints) {
      const LoadedModel m = load_model(ckpt);
      check_geometry(m.config, ds.header);
      std::vector<train::Example> prefixes;
      prefixes.reserve(frames);
      for (std::size_t k = 1; k <= frames; ++k) {
        prefixes.push_back({match->id, sim::sample_prefix(*match, m.config.time_steps, k), 0});
      }
      const auto y = train::predict(m.config, m.params, prefixes, rc.threads);
      const std::string name = model_label(m.config);
      for (std::size_t k = 0; k < frames; ++k) {
        const auto predicted = y[k] >= 0.5 ? sim::Winner::p1 : sim::Winner::p2;
        out << name << ',' << match->frames[k].step << ',' << y[k] << ',' << 1.0 - y[k] << ','
            << sim::winner_name(predicted) << ',' << label << '\n';
      }
      log << name << " final prediction " << sim::winner_name(y.back() >= 0.5 ? sim::Winner::p1 : sim::Winner::p2)
          << " (label " << label << ")\n";
    }
    for (auto e : {baselines::Evaluator::simple, baselines::Evaluator::lanchester}) {
      for (const auto& f : match->frames) {
        const sim::GameState s = sim::decode_state(f.planes, f.step);
        out << baselines::evaluator_name(e) << ',' << f.step << ',' << baselines::evaluate(e, s, sim::Owner::p1)
            << ',' << baselines::evaluate(e, s, sim::Owner::p2) << ','
            << sim::winner_name(baselines::predict_winner_classical(s, e)) << ',' << label << '\n';
      }
    }
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
    log << "wrote " << path.string() << " (" << frames << " frames per evaluator)\n";
  });
}

}  // namespace tstf::cli
