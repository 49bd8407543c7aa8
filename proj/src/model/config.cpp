// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/model/config.hpp"

#include "tstf/core/errors.hpp"

#include <json.hpp>

namespace tstf::model {

using nlohmann::json;

std::string_view variant_name(Variant v) { return v == Variant::tstf ? "tstf" : "space_time_only"; }

Variant parse_variant(std::string_view s) {
  if (s == "tstf") return Variant::tstf;
  if (s == "space_time_only") return Variant::space_time_only;
  throw ConfigError("unknown variant '" + std::string(s) + "' (expected tstf or space_time_only)");
}

void ModelConfig::validate() const {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  need(layers >= 1, "layers must be >= 1");
  need(dim >= 1 && heads >= 1 && channels >= 1, "dim, heads and channels must be >= 1");
  need(time_steps >= 1, "time_steps must be >= 1");
  need(patch >= 1 && height >= 1 && width >= 1, "patch and map dims must be >= 1");
  need(dim % heads == 0, "dim " + std::to_string(dim) + " is not divisible by heads " + std::to_string(heads));
  need(dim % channels == 0,
       "dim " + std::to_string(dim) + " is not divisible by channels " + std::to_string(channels));
  need(height % patch == 0 && width % patch == 0,
       "map " + std::to_string(height) + "x" + std::to_string(width) + " is not divisible by patch " +
           std::to_string(patch));
}

namespace {

ModelConfig full_scale(int layers, Variant variant) {
  ModelConfig c;
  c.layers = layers;
  c.dim = 155;
  c.heads = 5;
  c.channels = 5;
  c.time_steps = 500;
  c.variant = variant;
  return c;
}

}  // namespace

ModelConfig preset(std::string_view name) {
  if (name == "desk") return ModelConfig{};
  if (name == "desk-4") {
    ModelConfig c;
    c.layers = 4;
    return c;
  }
  if (name == "gradcheck") {
    ModelConfig c;
    c.time_steps = 4;
    c.height = 8;
    c.width = 8;
    return c;
  }
  if (name == "tstf-6") return full_scale(6, Variant::tstf);
  if (name == "tstf-8") return full_scale(8, Variant::tstf);
  if (name == "timesformer-12") return full_scale(12, Variant::space_time_only);
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"desk", "desk-4", "gradcheck", "tstf-6", "tstf-8", "timesformer-12"}; }

int preset_batch_size(std::string_view name) {
  if (name == "timesformer-12") return 2;
  if (name == "tstf-6" || name == "tstf-8") return 1;
  return 0;
}

std::string to_json(const ModelConfig& c) {
  json j = {{"layers", c.layers},       {"dim", c.dim},
            {"heads", c.heads},         {"channels", c.channels},
            {"time_steps", c.time_steps}, {"patch", c.patch},
            {"height", c.height},       {"width", c.width},
            {"variant", std::string(variant_name(c.variant))}, {"pre_ln", c.pre_ln}};
  return j.dump(2);
}

ModelConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("model config must be a JSON object");
  ModelConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "layers") c.layers = value.get<int>();
      else if (key == "dim") c.dim = value.get<int>();
      else if (key == "heads") c.heads = value.get<int>();
      else if (key == "channels") c.channels = value.get<int>();
      else if (key == "time_steps") c.time_steps = value.get<int>();
      else if (key == "patch") c.patch = value.get<int>();
      else if (key == "height") c.height = value.get<int>();
      else if (key == "width") c.width = value.get<int>();
      else if (key == "variant") c.variant = parse_variant(value.get<std::string>());
      else if (key == "pre_ln") c.pre_ln = value.get<bool>();
      else throw ConfigError("unknown model config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad model config value: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace tstf::model
