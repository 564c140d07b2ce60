// Copyright 2026 The dyncoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "dyncoh/channel.hpp"

namespace dyncoh {

inline constexpr int kChannelFormatVersion = 1;

/// On-disk channel description. Complex entries are written as [re, im]
/// pairs and matrices as row-major nested arrays.
struct ChannelFile {
  int format_version = kChannelFormatVersion;
  Channel channel;
  std::optional<KrausSet> kraus;
  std::optional<Bases> basis;
};

/// Thrown for unreadable or structurally malformed files. Semantic failures
/// (not CPTP, non-unitary basis, ...) surface as InvariantViolation.
class FormatError : public Error {
 public:
  using Error::Error;
};

std::string to_json_text(const ChannelFile& f);
ChannelFile from_json_text(const std::string& text);

void save_channel_file(const std::filesystem::path& path, const ChannelFile& f);
ChannelFile load_channel_file(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double, as used in every file.
std::string format_double(double x);

}  // namespace dyncoh
