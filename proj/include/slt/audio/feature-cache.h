// include/slt/audio/feature-cache.h
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

#ifndef SLT_AUDIO_FEATURE_CACHE_H_
#define SLT_AUDIO_FEATURE_CACHE_H_

#include <map>
#include <string>
#include <vector>

#include "slt/audio/mfcc.h"

namespace slt {

// "SLTF" feature cache:
//   magic "SLTF", u32 utterance count, then per utterance
//   u32 id length, UTF-8 id, u32 T_x, u32 n, T_x*n f32 row-major.
// All integers and floats little-endian.

void WriteFeatureCache(const std::string &path, const std::vector<FeatureMatrix> &utterances);
std::vector<FeatureMatrix> ReadFeatureCache(const std::string &path);

/// ReadFeatureCache indexed by utterance id (duplicate ids are a FormatError).
std::map<std::string, FeatureMatrix> LoadFeatureIndex(const std::string &path);

}  // namespace slt

#endif  // SLT_AUDIO_FEATURE_CACHE_H_
