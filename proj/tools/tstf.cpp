// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

// tstf: dataset generation, training, evaluation, comparison and timelines.

#include "tstf/cli/commands.hpp"
#include "tstf/core/errors.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace {

using tstf::cli::RunConfig;

struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> preset;
  std::optional<std::string> fractions;
  std::optional<std::uint64_t> match_id;
  std::optional<int> threads;
};

void add_common(CLI::App& cmd, Flags& f, const RunConfig& d) {
  cmd.add_option("--config", f.config, "JSON run config; flags override its keys")->default_str("none");
  cmd.add_option("--out", f.out, "output directory")->default_str(d.out.string());
  cmd.add_option("--seed", f.seed, "run seed")->default_str(std::to_string(d.seed));
  cmd.add_option("--preset", f.preset, "model preset: desk, desk-4, gradcheck, tstf-6, tstf-8, timesformer-12")
      ->default_str(d.preset);
  cmd.add_option("--threads", f.threads, "worker threads")->default_str(std::to_string(d.threads));
}

RunConfig resolve(const Flags& f) {
  RunConfig rc = f.config.empty() ? RunConfig{} : tstf::cli::load_run_config(f.config);
  if (f.out) rc.out = *f.out;
  if (f.seed) rc.seed = *f.seed;
  if (f.preset) rc.preset = *f.preset;
  if (f.threads) rc.threads = *f.threads;
  if (f.fractions) rc.fractions = tstf::cli::parse_fraction_list(*f.fractions);
  if (f.match_id) rc.match_id = *f.match_id;
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time-feature transformer lab for RTS situation assessment"};
  app.require_subcommand(1);
  const RunConfig defaults;
  Flags flags;

  using Command = std::function<int(const RunConfig&, std::ostream&)>;
  Command chosen;
  auto add = [&](const char* name, const char* help, Command fn) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common(*cmd, flags, defaults);
    cmd->callback([&chosen, fn] { chosen = fn; });
    return cmd;
  };
  add("generate", "run the tournament and write dataset.jsonl and split.json", tstf::cli::cmd_generate);
  add("train", "train a model; writes model.ckpt, model.ckpt.json and train_log.csv", tstf::cli::cmd_train);
  add("eval", "score a checkpoint on the test split; writes metrics.csv", tstf::cli::cmd_eval);
  add("compare", "progress-stratified comparison; writes compare.csv and stability.csv", tstf::cli::cmd_compare)
      ->add_option("--fractions", flags.fractions, "comma-separated progress fractions")
      ->default_str("0.04,0.2,0.4,0.6,0.8,1");
  add("timeline", "per-frame predictions on one match; writes timeline_<id>.csv", tstf::cli::cmd_timeline)
      ->add_option("--match-id", flags.match_id, "match to trace")
      ->default_str("none");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? tstf::cli::kExitOk : tstf::cli::kExitConfig;
  }

  RunConfig rc;
  try {
    rc = resolve(flags);
  } catch (const tstf::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tstf::cli::kExitArtifact;
  } catch (const tstf::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tstf::cli::kExitConfig;
  }
  return chosen(rc, std::cerr);
}
