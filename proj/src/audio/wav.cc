// src/audio/wav.cc
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

#include "slt/audio/wav.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "slt/base/binary-io.h"
#include "slt/base/error.h"

namespace slt {

PcmSignal ReadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError(path + ": cannot open");
  const std::string fail = path + ": ";
  try {
    if (ReadBytes(is, 4, "RIFF tag") != "RIFF") throw FormatError(fail + "not a RIFF file");
    ReadU32(is, "RIFF size");
    if (ReadBytes(is, 4, "WAVE tag") != "WAVE") throw FormatError(fail + "not a WAVE file");

    bool have_fmt = false;
    PcmSignal signal;
    while (true) {
      const std::string id = ReadBytes(is, 4, "chunk id");
      const std::uint32_t size = ReadU32(is, "chunk size");
      if (id == "fmt ") {
        if (size < 16) throw FormatError(fail + "fmt chunk too small");
        const std::uint16_t format = ReadU16(is, "audio format");
        const std::uint16_t channels = ReadU16(is, "channel count");
        const std::uint32_t rate = ReadU32(is, "sample rate");
        ReadU32(is, "byte rate");
        ReadU16(is, "block align");
        const std::uint16_t bits = ReadU16(is, "bits per sample");
        ReadBytes(is, size - 16 + (size & 1), "fmt extension");
        if (format != 1)
          throw FormatError(fail + "unsupported codec " + std::to_string(format) +
                            " (only PCM is accepted)");
        if (channels != 1)
          throw FormatError(fail + "expected mono audio, got " + std::to_string(channels) +
                            " channels");
        if (bits != 16)
          throw FormatError(fail + "expected 16-bit samples, got " + std::to_string(bits));
        if (rate == 0) throw FormatError(fail + "sample rate is zero");
        signal.sample_rate = static_cast<int>(rate);
        have_fmt = true;
      } else if (id == "data") {
        if (!have_fmt) throw FormatError(fail + "data chunk before fmt chunk");
        const std::string raw = ReadBytes(is, size, "sample data");
        const std::size_t n = size / 2;
        signal.samples.resize(n);
        const auto *u = reinterpret_cast<const unsigned char *>(raw.data());
        for (std::size_t i = 0; i < n; ++i) {
          const auto v = static_cast<std::int16_t>(u[2 * i] | (u[2 * i + 1] << 8));
          signal.samples[i] = v / 32768.0;
        }
        return signal;
      } else {
        ReadBytes(is, size + (size & 1), "chunk body");
      }
    }
  } catch (const FormatError &e) {
    const std::string msg = e.what();
    if (msg.rfind(fail, 0) == 0) throw;
    throw FormatError(fail + msg);
  }
}

void WriteWav(const std::string &path, const PcmSignal &signal) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError(path + ": cannot open for writing");
  const auto n = static_cast<std::uint32_t>(signal.samples.size());
  os.write("RIFF", 4);
  WriteU32(os, 36 + 2 * n);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  WriteU32(os, 16);
  WriteU16(os, 1);
  WriteU16(os, 1);
  WriteU32(os, static_cast<std::uint32_t>(signal.sample_rate));
  WriteU32(os, static_cast<std::uint32_t>(signal.sample_rate) * 2);
  WriteU16(os, 2);
  WriteU16(os, 16);
  os.write("data", 4);
  WriteU32(os, 2 * n);
  for (double s : signal.samples) {
    const double c = std::clamp(s, -1.0, 1.0);
    const auto v = static_cast<std::int16_t>(std::lround(std::clamp(c * 32768.0, -32768.0, 32767.0)));
    WriteU16(os, static_cast<std::uint16_t>(v));
  }
  if (!os) throw FormatError(path + ": write failed");
}

}  // namespace slt
