// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/core/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <string_view>

namespace tstf {
namespace {

constexpr std::string_view kMagic = "TSTFCKP1";

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(std::is_unsigned_v<T>);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  os.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!is.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw CheckpointError("checkpoint truncated");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, std::span<const NamedTensor> tensors) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(tensors.size()));
  for (const NamedTensor& t : tensors) {
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(t.name.size()));
    os.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(t.tensor.rank()));
    for (Index d : t.tensor.shape()) put_le<std::uint64_t>(os, static_cast<std::uint64_t>(d));
    for (Index i = 0; i < t.tensor.size(); ++i) put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(t.tensor[i]));
  }
  if (!os) throw IoError("write failed for " + path.string());
}

std::vector<NamedTensor> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size()) || std::string_view(magic.data(), magic.size()) != kMagic) {
    throw CheckpointError(path.string() + " is not a parameter container");
  }
  const auto count = get_le<std::uint32_t>(is);
  std::vector<NamedTensor> out;
  out.reserve(count);
  for (std::uint32_t n = 0; n < count; ++n) {
    const auto name_len = get_le<std::uint32_t>(is);
    std::string name(name_len, '\0');
    if (!is.read(name.data(), name_len)) throw CheckpointError("checkpoint truncated");
    const auto rank = get_le<std::uint32_t>(is);
    Shape shape(rank);
    for (auto& d : shape) d = static_cast<Index>(get_le<std::uint64_t>(is));
    Vector data(element_count(shape));
    for (Index i = 0; i < data.size(); ++i) data[i] = std::bit_cast<double>(get_le<std::uint64_t>(is));
    out.push_back({std::move(name), Tensor(std::move(shape), std::move(data))});
  }
  if (is.peek() != std::char_traits<char>::eof()) throw CheckpointError("trailing bytes in " + path.string());
  return out;
}

}  // namespace tstf
