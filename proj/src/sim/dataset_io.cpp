// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/core/errors.hpp"
#include "tstf/sim/tournament.hpp"

#include <json.hpp>

#include <fstream>

namespace tstf::sim {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "tstf-dataset";

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  return in;
}

// Frames dominate the file size, so they are streamed by hand instead of
// going through a json value.
void write_frame(std::string& buf, const Frame& f) {
  buf += "{\"step\":";
  buf += std::to_string(f.step);
  buf += ",\"planes\":[";
  const RawFrame& r = f.planes;
  std::size_t k = 0;
  for (int c = 0; c < kPlanes; ++c) {
    buf += c ? ",[" : "[";
    for (int y = 0; y < r.height; ++y) {
      buf += y ? ",[" : "[";
      for (int x = 0; x < r.width; ++x, ++k) {
        if (x) buf += ',';
        buf += std::to_string(r.values[k]);
      }
      buf += ']';
    }
    buf += ']';
  }
  buf += "]}";
}

RawFrame read_frame(const json& planes, const DatasetHeader& h) {
  RawFrame r{h.width, h.height, std::vector<std::uint8_t>(static_cast<std::size_t>(kPlanes * h.width * h.height))};
  if (!planes.is_array() || planes.size() != static_cast<std::size_t>(kPlanes)) {
    throw FormatError("frame must hold " + std::to_string(kPlanes) + " planes");
  }
  std::size_t k = 0;
  for (const json& plane : planes) {
    if (!plane.is_array() || plane.size() != static_cast<std::size_t>(h.height)) throw FormatError("bad plane height");
    for (const json& row : plane) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(h.width)) throw FormatError("bad plane width");
      for (const json& v : row) {
        const int value = v.get<int>();
        if (value < 0 || value > 255) throw FormatError("plane value out of range");
        r.values[k++] = static_cast<std::uint8_t>(value);
      }
    }
  }
  return r;
}

}  // namespace

void write_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  auto out = open_out(path);
  const DatasetHeader& h = dataset.header;
  json header = {{"format", kFormat},        {"version", h.version},
                 {"width", h.width},         {"height", h.height},
                 {"channels", h.channels},   {"capture_every", h.capture_every},
                 {"max_steps", h.max_steps}};
  out << header.dump() << '\n';
  std::string buf;
  for (const MatchRecord& m : dataset.matches) {
    json meta = {{"id", m.id},     {"strategy_a", m.strategy_a},         {"strategy_b", m.strategy_b},
                 {"seed", m.seed}, {"winner", std::string(winner_name(m.winner))}, {"duration", m.duration}};
    buf = meta.dump();
    buf.pop_back();
    buf += ",\"frames\":[";
    for (std::size_t i = 0; i < m.frames.size(); ++i) {
      if (i) buf += ',';
      write_frame(buf, m.frames[i]);
    }
    buf += "]}\n";
    out << buf;
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Dataset read_dataset(const std::filesystem::path& path) {
  auto in = open_in(path);
  Dataset ds;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("'" + path.string() + "' is empty");
  std::size_t line_no = 1;
  try {
    const json header = json::parse(line);
    if (header.value("format", "") != kFormat) throw FormatError("not a tstf dataset");
    DatasetHeader& h = ds.header;
    h.version = header.at("version").get<int>();
    if (h.version != 1) throw FormatError("unsupported dataset version " + std::to_string(h.version));
    h.width = header.at("width").get<int>();
    h.height = header.at("height").get<int>();
    h.channels = header.at("channels").get<int>();
    h.capture_every = header.at("capture_every").get<int>();
    h.max_steps = header.at("max_steps").get<int>();
    if (h.channels != kPlanes || h.width < 1 || h.height < 1) throw FormatError("unsupported frame geometry");
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const json rec = json::parse(line);
      MatchRecord m;
      m.id = rec.at("id").get<std::uint64_t>();
      m.strategy_a = rec.at("strategy_a").get<std::string>();
      m.strategy_b = rec.at("strategy_b").get<std::string>();
      m.seed = rec.at("seed").get<std::uint64_t>();
      m.winner = parse_winner(rec.at("winner").get<std::string>());
      m.duration = rec.at("duration").get<int>();
      for (const json& f : rec.at("frames")) {
        m.frames.push_back({f.at("step").get<int>(), read_frame(f.at("planes"), h)});
      }
      if (m.frames.empty()) throw FormatError("match " + std::to_string(m.id) + " has no frames");
      ds.matches.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
  } catch (const ContractError& e) {
    throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
  }
  return ds;
}

void write_split(const std::filesystem::path& path, const DatasetSplit& split) {
  auto out = open_out(path);
  json j = {{"train", split.train},
            {"test", split.test},
            {"validation", split.validation},
            {"draws_excluded", split.draws_excluded}};
  out << j.dump() << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

DatasetSplit read_split(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    const json j = json::parse(in);
    DatasetSplit s;
    s.train = j.at("train").get<std::vector<std::uint64_t>>();
    s.test = j.at("test").get<std::vector<std::uint64_t>>();
    s.validation = j.at("validation").get<std::vector<std::uint64_t>>();
    s.draws_excluded = j.at("draws_excluded").get<std::size_t>();
    return s;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace tstf::sim
