// src/audio/feature-cache.cc
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

#include "slt/audio/feature-cache.h"

#include <fstream>

#include "slt/base/binary-io.h"
#include "slt/base/error.h"

namespace slt {

void WriteFeatureCache(const std::string &path, const std::vector<FeatureMatrix> &utterances) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError(path + ": cannot open for writing");
  os.write("SLTF", 4);
  WriteU32(os, static_cast<std::uint32_t>(utterances.size()));
  for (const FeatureMatrix &u : utterances) {
    WriteString(os, u.id);
    WriteU32(os, static_cast<std::uint32_t>(u.num_frames()));
    WriteU32(os, static_cast<std::uint32_t>(u.dim()));
    for (double v : u.frames.values()) WriteF32(os, static_cast<float>(v));
  }
  if (!os) throw FormatError(path + ": write failed");
}

std::vector<FeatureMatrix> ReadFeatureCache(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError(path + ": cannot open");
  try {
    if (ReadBytes(is, 4, "magic") != "SLTF") throw FormatError("bad magic (expected SLTF)");
    const std::uint32_t count = ReadU32(is, "utterance count");
    std::vector<FeatureMatrix> out;
    out.reserve(count);
    for (std::uint32_t u = 0; u < count; ++u) {
      FeatureMatrix m;
      m.id = ReadString(is, "utterance id");
      const std::uint32_t frames = ReadU32(is, "frame count");
      const std::uint32_t dim = ReadU32(is, "feature dimension");
      if (frames == 0 || dim == 0) throw FormatError("empty feature matrix for " + m.id);
      m.frames = Tensor(Shape{frames, dim});
      for (double &v : m.frames.values()) v = ReadF32(is, "feature value");
      out.push_back(std::move(m));
    }
    return out;
  } catch (const FormatError &e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::map<std::string, FeatureMatrix> LoadFeatureIndex(const std::string &path) {
  std::map<std::string, FeatureMatrix> index;
  for (FeatureMatrix &m : ReadFeatureCache(path)) {
    std::string id = m.id;
    if (!index.emplace(id, std::move(m)).second)
      throw FormatError(path + ": duplicate utterance id " + id);
  }
  return index;
}

}  // namespace slt
