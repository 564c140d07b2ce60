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


#include "dyncoh/channel_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dyncoh {
namespace {

using nlohmann::json;

json encode(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw FormatError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvariantViolation(where + ".finite", INFINITY);
  return x;
}

ComplexMatrix decode(const json& v, Index rows, Index cols, const std::string& where) {
  if (!v.is_array() || static_cast<Index>(v.size()) != rows) {
    throw FormatError(where + ": expected " + std::to_string(rows) + " rows");
  }
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = v[i];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw FormatError(where + ": row " + std::to_string(i) + " must have " +
                        std::to_string(cols) + " entries");
    }
    for (Index j = 0; j < cols; ++j) {
      const json& e = row[j];
      if (!e.is_array() || e.size() != 2) {
        throw FormatError(where + ": entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") must be an [re, im] pair");
      }
      m(i, j) = {number(e[0], where), number(e[1], where)};
    }
  }
  return m;
}

Index dimension(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw FormatError(std::string("missing integer field '") + key + "'");
  }
  const auto d = doc[key].get<long long>();
  if (d <= 0 || d > 4096) throw FormatError(std::string("field '") + key + "' out of range");
  return static_cast<Index>(d);
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::string to_json_text(const ChannelFile& f) {
  const Channel& n = f.channel;
  json doc;
  doc["format_version"] = f.format_version;
  doc["dim_in"] = n.dim_in();
  doc["dim_out"] = n.dim_out();
  doc["choi"] = encode(n.choi());
  if (f.kraus) {
    json ops = json::array();
    for (const auto& k : f.kraus->ops) ops.push_back(encode(k));
    doc["kraus"] = std::move(ops);
  }
  if (f.basis) doc["basis"] = {{"in", encode(f.basis->in.basis)}, {"out", encode(f.basis->out.basis)}};
  return doc.dump(1) + "\n";
}

ChannelFile from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("top level must be an object");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer()) {
    throw FormatError("missing integer field 'format_version'");
  }
  const int version = doc["format_version"].get<int>();
  if (version != kChannelFormatVersion) {
    throw FormatError("unsupported format_version " + std::to_string(version));
  }
  const Index din = dimension(doc, "dim_in");
  const Index dout = dimension(doc, "dim_out");
  if (!doc.contains("choi")) throw FormatError("missing field 'choi'");
  ComplexMatrix choi = decode(doc["choi"], din * dout, din * dout, "choi");

  ChannelFile f{version, Channel::from_choi(std::move(choi), din, dout), std::nullopt, std::nullopt};

  if (doc.contains("kraus")) {
    const json& ks = doc["kraus"];
    if (!ks.is_array() || ks.empty()) throw FormatError("kraus: expected a non-empty list");
    KrausSet k;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      k.ops.push_back(decode(ks[i], dout, din, "kraus[" + std::to_string(i) + "]"));
    }
    const Channel from_ops = from_kraus(k);
    const double r = (from_ops.choi() - f.channel.choi()).cwiseAbs().maxCoeff();
    if (r > 1e-8) throw InvariantViolation("kraus.matches_choi", r);
    f.kraus = std::move(k);
  }
  if (doc.contains("basis")) {
    const json& b = doc["basis"];
    if (!b.is_object() || !b.contains("in") || !b.contains("out")) {
      throw FormatError("basis: expected an object with 'in' and 'out'");
    }
    Bases bases{{din, decode(b["in"], din, din, "basis.in")},
                {dout, decode(b["out"], dout, dout, "basis.out")}};
    bases.in.validate();
    bases.out.validate();
    f.basis = std::move(bases);
  }
  return f;
}

void save_channel_file(const std::filesystem::path& path, const ChannelFile& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << to_json_text(f);
  if (!out) throw FormatError("write failed for " + path.string());
}

ChannelFile load_channel_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

}  // namespace dyncoh
