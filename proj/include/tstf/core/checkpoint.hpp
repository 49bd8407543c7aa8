// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/core/errors.hpp"
#include "tstf/core/tensor.hpp"

#include <filesystem>
#include <span>
#include <vector>

namespace tstf {

/// Byte layout of a parameter container (all integers little-endian):
///
///   magic    8 bytes  "TSTFCKP1"
///   count    u32      number of entries
///   entry (repeated count times):
///     name_len u32, name bytes (UTF-8, no terminator)
///     rank     u32, dims u64 x rank
///     payload  f64 x product(dims), IEEE-754 binary64, row-major
///
/// Nothing follows the last entry.
/// Malformed container contents. Unopenable paths raise IoError instead.
class CheckpointError : public FormatError {
 public:
  using FormatError::FormatError;
};

void save_checkpoint(const std::filesystem::path& path, std::span<const NamedTensor> tensors);
std::vector<NamedTensor> load_checkpoint(const std::filesystem::path& path);

}  // namespace tstf
