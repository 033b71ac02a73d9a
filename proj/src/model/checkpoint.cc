// src/model/checkpoint.cc
//
// Copyright 2026  The slt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "slt/model/checkpoint.h"

#include <filesystem>
#include <fstream>

#include "slt/base/binary-io.h"
#include "slt/base/error.h"

namespace slt {

namespace {
const char kMagic[] = "SLTC";
}  // namespace

void SaveParameters(const std::string &path, const ParameterSet &params) {
  // Write to a sibling file first so a crash never leaves a truncated checkpoint.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw FormatError(path + ": cannot open for writing");
    os.write(kMagic, 4);
    WriteU32(os, kCheckpointVersion);
    const std::vector<std::string> names = params.Names();
    WriteU32(os, static_cast<std::uint32_t>(names.size()));
    for (const std::string &name : names) {
      const Tensor &t = params.Get(name).value;
      WriteString(os, name);
      WriteU32(os, static_cast<std::uint32_t>(t.rank()));
      for (std::size_t d : t.shape()) WriteU32(os, static_cast<std::uint32_t>(d));
      for (double v : t.values()) WriteF32(os, static_cast<float>(v));
    }
    if (!os) throw FormatError(path + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

ParameterSet LoadParameters(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError(path + ": cannot open checkpoint");
  try {
    if (ReadBytes(is, 4, "magic") != kMagic) throw FormatError("not an SLTC checkpoint");
    const std::uint32_t version = ReadU32(is, "version");
    if (version != kCheckpointVersion)
      throw FormatError("unsupported checkpoint version " + std::to_string(version));
    const std::uint32_t count = ReadU32(is, "parameter count");
    ParameterSet params;
    for (std::uint32_t i = 0; i < count; ++i) {
      const std::string name = ReadString(is, "parameter name");
      const std::uint32_t rank = ReadU32(is, "rank");
      if (rank > 8) throw FormatError(name + ": implausible rank " + std::to_string(rank));
      Shape shape(rank);
      for (std::size_t &d : shape) d = ReadU32(is, "extent");
      if (params.Has(name)) throw FormatError("duplicate parameter " + name);
      Parameter &p = params.Add(name, shape);
      for (double &v : p.value.values()) v = ReadF32(is, "parameter data");
      if (!p.value.AllFinite()) throw FormatError(name + ": non-finite values");
    }
    return params;
  } catch (const FormatError &e) {
    throw FormatError(path + ": " + e.what());
  } catch (const DimensionError &e) {
    throw FormatError(path + ": " + e.what());
  }
}

void RoundToStoragePrecision(ParameterSet *params) {
  for (Parameter *p : params->All())
    for (double &v : p->value.values()) v = static_cast<float>(v);
}

}  // namespace slt
