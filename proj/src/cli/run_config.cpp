// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/cli/run_config.hpp"

#include "tstf/core/errors.hpp"
#include "tstf/sim/engine.hpp"
#include "tstf/train/trainer.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace tstf::cli {

namespace {

using json = nlohmann::json;

template <class T>
T typed(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

void RunConfig::validate() const {
  if (out.empty()) throw ConfigError("out must not be empty");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  const auto presets = model::preset_names();
  if (std::find(presets.begin(), presets.end(), preset) == presets.end()) {
    throw ConfigError("unknown preset '" + preset + "'");
  }
  const auto names = roster_or_default();
  if (names.size() < 2) throw ConfigError("roster needs at least two strategies");
  for (const std::string& n : names) {
    if (!sim::is_registered(n)) throw ConfigError("unknown strategy '" + n + "' in roster");
  }
  if (rounds <= 0 || rounds % 2 != 0) throw ConfigError("rounds must be positive and even");
  if (max_steps <= 0) throw ConfigError("max_steps must be positive");
  if (capture_every <= 0) throw ConfigError("capture_every must be positive");
  if (std::any_of(split_ratios.begin(), split_ratios.end(), [](double r) { return !(r >= 0.0); }) ||
      split_ratios[0] + split_ratios[1] + split_ratios[2] <= 0.0) {
    throw ConfigError("split_ratios must be non-negative with a positive sum");
  }
  if (labels != "outcome" && labels != "survivors") {
    throw ConfigError("labels must be 'outcome' or 'survivors', got '" + labels + "'");
  }
  if (epochs <= 0) throw ConfigError("epochs must be positive");
  if (batch_size <= 0) throw ConfigError("batch_size must be positive");
  if (!(lr > 0.0)) throw ConfigError("lr must be positive");
  if (!(weight_decay >= 0.0)) throw ConfigError("weight_decay must be non-negative");
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) throw ConfigError("fractions must lie in (0, 1]");
  }
  model_config();
}

std::filesystem::path RunConfig::dataset_path() const { return dataset.empty() ? out / "dataset.jsonl" : dataset; }
std::filesystem::path RunConfig::split_path() const { return split.empty() ? out / "split.json" : split; }
std::filesystem::path RunConfig::checkpoint_path() const {
  return checkpoint.empty() ? out / "model.ckpt" : checkpoint;
}

std::vector<std::string> RunConfig::roster_or_default() const {
  return roster.empty() ? sim::registered_strategies() : roster;
}

std::vector<double> RunConfig::fractions_or_default() const {
  return fractions.empty() ? train::default_fractions() : fractions;
}

model::ModelConfig RunConfig::model_config() const {
  json merged = json::parse(model::to_json(model::preset(preset)));
  json overrides;
  try {
    overrides = json::parse(model_overrides);
  } catch (const json::exception&) {
    throw ConfigError("model overrides are not valid JSON");
  }
  if (!overrides.is_object()) throw ConfigError("config key 'model' must be an object");
  merged.update(overrides);
  return model::config_from_json(merged.dump());
}

RunConfig parse_run_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig rc;
  using Setter = std::function<void(const json&, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"out", [&](const json& v, const std::string& k) { rc.out = typed<std::string>(v, k); }},
      {"seed", [&](const json& v, const std::string& k) { rc.seed = typed<std::uint64_t>(v, k); }},
      {"preset", [&](const json& v, const std::string& k) { rc.preset = typed<std::string>(v, k); }},
      {"threads", [&](const json& v, const std::string& k) { rc.threads = typed<int>(v, k); }},
      {"roster", [&](const json& v, const std::string& k) { rc.roster = typed<std::vector<std::string>>(v, k); }},
      {"rounds", [&](const json& v, const std::string& k) { rc.rounds = typed<int>(v, k); }},
      {"max_steps", [&](const json& v, const std::string& k) { rc.max_steps = typed<int>(v, k); }},
      {"capture_every", [&](const json& v, const std::string& k) { rc.capture_every = typed<int>(v, k); }},
      {"split_ratios",
       [&](const json& v, const std::string& k) { rc.split_ratios = typed<std::array<double, 3>>(v, k); }},
      {"labels", [&](const json& v, const std::string& k) { rc.labels = typed<std::string>(v, k); }},
      {"dataset", [&](const json& v, const std::string& k) { rc.dataset = typed<std::string>(v, k); }},
      {"split", [&](const json& v, const std::string& k) { rc.split = typed<std::string>(v, k); }},
      {"epochs", [&](const json& v, const std::string& k) { rc.epochs = typed<int>(v, k); }},
      {"batch_size", [&](const json& v, const std::string& k) { rc.batch_size = typed<int>(v, k); }},
      {"lr", [&](const json& v, const std::string& k) { rc.lr = typed<double>(v, k); }},
      {"weight_decay", [&](const json& v, const std::string& k) { rc.weight_decay = typed<double>(v, k); }},
      {"model",
       [&](const json& v, const std::string& k) {
         if (!v.is_object()) throw ConfigError("config key '" + k + "' must be an object");
         rc.model_overrides = v.dump();
       }},
      {"checkpoint", [&](const json& v, const std::string& k) { rc.checkpoint = typed<std::string>(v, k); }},
      {"baseline_checkpoint",
       [&](const json& v, const std::string& k) { rc.baseline_checkpoint = typed<std::string>(v, k); }},
      {"fractions", [&](const json& v, const std::string& k) { rc.fractions = typed<std::vector<double>>(v, k); }},
      {"match_id", [&](const json& v, const std::string& k) { rc.match_id = typed<std::uint64_t>(v, k); }},
  };
  for (const auto& [key, value] : doc.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(value, key);
  }
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::vector<double> parse_fraction_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
      throw ConfigError("fractions: cannot parse '" + std::string(item) + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

}  // namespace tstf::cli
