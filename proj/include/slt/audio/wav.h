// include/slt/audio/wav.h
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

#ifndef SLT_AUDIO_WAV_H_
#define SLT_AUDIO_WAV_H_

#include <string>
#include <vector>

namespace slt {

struct PcmSignal {
  std::vector<double> samples;  // in [-1, 1]
  int sample_rate = 16000;
};

/// Reads a 16-bit little-endian PCM mono WAV file. Anything else
/// (stereo, 8/24-bit, float, compressed) is a FormatError naming the problem.
PcmSignal ReadWav(const std::string &path);

/// Writes 16-bit mono PCM; samples are clipped to [-1, 1].
void WriteWav(const std::string &path, const PcmSignal &signal);

}  // namespace slt

#endif  // SLT_AUDIO_WAV_H_
