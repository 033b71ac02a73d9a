// src/train/dropout.cc
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

#include "slt/train/dropout.h"

#include "slt/base/error.h"
#include "slt/text/vocabulary.h"

namespace slt {

Tensor VariationalDropoutMask(std::size_t size, double rate, std::mt19937_64 *rng) {
  if (!(rate >= 0.0 && rate < 1.0))
    throw ConfigError("dropout rate must lie in [0, 1), got " + std::to_string(rate));
  Tensor mask(Shape{size}, 1.0);
  if (rate == 0.0) return mask;
  std::bernoulli_distribution keep(1.0 - rate);
  const double scale = 1.0 / (1.0 - rate);
  for (double &v : mask.values()) v = keep(*rng) ? scale : 0.0;
  return mask;
}

DropoutMasks MakeDropoutMasks(const ModelConfig &config, double rate, std::mt19937_64 *rng) {
  DropoutMasks m;
  if (rate == 0.0) return m;
  if (config.encoder == EncoderKind::kSpeech) {
    m.speech_input1 = VariationalDropoutMask(config.speech.input_layer1, rate, rng);
    m.speech_input2 = VariationalDropoutMask(config.speech.input_layer2, rate, rng);
    for (std::size_t l = 0; l < config.speech.num_layers; ++l)
      m.speech_layers.push_back(VariationalDropoutMask(config.speech.AnnotationDim(), rate, rng));
  } else {
    m.text_embedding = VariationalDropoutMask(config.text.embedding_size, rate, rng);
    m.text_output = VariationalDropoutMask(config.text.AnnotationDim(), rate, rng);
  }
  const DecoderConfig &d = config.decoder;
  m.target_embedding = VariationalDropoutMask(d.embedding_size, rate, rng);
  m.decoder_output = VariationalDropoutMask(d.cell_size, rate, rng);
  if (d.output_layer > 0) m.output_hidden = VariationalDropoutMask(d.output_layer, rate, rng);
  return m;
}

std::vector<int> SymbolDropout(const std::vector<int> &ids, double p, std::mt19937_64 *rng) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ConfigError("symbol dropout probability must lie in [0, 1], got " + std::to_string(p));
  std::vector<int> out = ids;
  if (p == 0.0) return out;
  std::bernoulli_distribution drop(p);
  for (int &id : out)
    if (!Vocabulary::IsReserved(id) && drop(*rng)) id = Vocabulary::kUnk;
  return out;
}

}  // namespace slt
