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


#include <gtest/gtest.h>

#include <filesystem>

#include "dyncoh/channel_io.hpp"
#include "dyncoh/random.hpp"

namespace dyncoh {
namespace {

const char* kIdentityText = R"({"format_version": 1, "dim_in": 2, "dim_out": 2, "choi": [
  [[1,0],[0,0],[0,0],[1,0]],
  [[0,0],[0,0],[0,0],[0,0]],
  [[0,0],[0,0],[0,0],[0,0]],
  [[1,0],[0,0],[0,0],[1,0]]]})";

std::string invariant_of(const std::string& text) {
  try {
    from_json_text(text);
  } catch (const InvariantViolation& e) {
    return e.invariant();
  }
  return "";
}

TEST(ChannelIo, ParsesHandWrittenFile) {
  const ChannelFile f = from_json_text(kIdentityText);
  EXPECT_EQ(f.channel.dim_in(), 2);
  EXPECT_LT((f.channel.choi() - identity_channel(2).choi()).norm(), 1e-15);
  EXPECT_FALSE(f.kraus.has_value());
  EXPECT_FALSE(f.basis.has_value());
}

TEST(ChannelIo, RoundTripIsExact) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Channel n = random_channel(s, 2 + s % 2, 3 - s % 2);
    const ChannelFile back = from_json_text(to_json_text(ChannelFile{1, n, {}, {}}));
    EXPECT_EQ(back.channel.choi(), n.choi());
  }
}

TEST(ChannelIo, RoundTripWithKrausAndBasis) {
  Rng rng(3);
  const Channel n = random_channel(1, 2, 2);
  const Bases b{DephasingSpec{2, random_unitary(rng, 2)}, DephasingSpec{2, random_unitary(rng, 2)}};
  const ChannelFile back = from_json_text(to_json_text(ChannelFile{1, n, kraus_of(n), b}));
  ASSERT_TRUE(back.kraus.has_value());
  ASSERT_TRUE(back.basis.has_value());
  EXPECT_EQ(back.basis->in.basis, b.in.basis);
  EXPECT_EQ(back.basis->out.basis, b.out.basis);
  EXPECT_EQ(back.kraus->ops.size(), kraus_of(n).ops.size());
}

TEST(ChannelIo, SaveAndLoad) {
  const auto path = std::filesystem::temp_directory_path() / "dyncoh_io_test.json";
  const Channel n = random_channel(9, 3, 2);
  save_channel_file(path, ChannelFile{1, n, {}, {}});
  EXPECT_EQ(load_channel_file(path).channel.choi(), n.choi());
  std::filesystem::remove(path);
  EXPECT_THROW(load_channel_file(path), FormatError);
}

TEST(ChannelIo, RejectsNonCptp) {
  std::string text = kIdentityText;
  text.replace(text.rfind("[1,0]]]"), 5, "[2,0]");
  EXPECT_EQ(invariant_of(text), "choi.trace_preserving");
}

TEST(ChannelIo, RejectsNonPositive) {
  const std::string text = R"({"format_version": 1, "dim_in": 1, "dim_out": 2,
    "choi": [[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]})";
  EXPECT_EQ(invariant_of(text), "choi.psd");
}

TEST(ChannelIo, RejectsMismatchedKraus) {
  std::string text = kIdentityText;
  text.insert(text.size() - 1, R"(, "kraus": [[[[0,0],[1,0]],[[1,0],[0,0]]]])");
  EXPECT_EQ(invariant_of(text), "kraus.matches_choi");
}

TEST(ChannelIo, RejectsNonUnitaryBasis) {
  std::string text = kIdentityText;
  text.insert(text.size() - 1,
              R"(, "basis": {"in": [[[1,0],[1,0]],[[0,0],[1,0]]], "out": [[[1,0],[0,0]],[[0,0],[1,0]]]})");
  EXPECT_EQ(invariant_of(text), "basis.unitary");
}

TEST(ChannelIo, StructuralErrors) {
  EXPECT_THROW(from_json_text("not json"), FormatError);
  EXPECT_THROW(from_json_text("[]"), FormatError);
  EXPECT_THROW(from_json_text(R"({"format_version": 2, "dim_in": 1, "dim_out": 1, "choi": [[[1,0]]]})"),
               FormatError);
  EXPECT_THROW(from_json_text(R"({"format_version": 1, "dim_in": 2, "dim_out": 1, "choi": [[[1,0]]]})"),
               FormatError);
  EXPECT_THROW(from_json_text(R"({"format_version": 1, "dim_in": 1, "dim_out": 1, "choi": [[[1]]]})"),
               FormatError);
  EXPECT_THROW(from_json_text(R"({"format_version": 1, "dim_in": 1, "dim_out": 1, "choi": [[[NaN,0]]]})"),
               FormatError);
  EXPECT_THROW(from_json_text(R"({"format_version": 1, "dim_in": 0, "dim_out": 1, "choi": []})"), FormatError);
}

TEST(ChannelIo, ShortestRoundTripDoubles) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 1e300}) EXPECT_EQ(std::stod(format_double(x)), x);
}

}  // namespace
}  // namespace dyncoh
