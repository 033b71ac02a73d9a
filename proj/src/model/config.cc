// src/model/config.cc
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

#include "slt/model/config.h"

#include <sstream>

#include "slt/base/error.h"
#include "slt/tensor/ops.h"

namespace slt {

std::size_t SpeechEncoderConfig::ConvOutputDim() const {
  return conv_filters * ConvOutputLength(ConvOutputLength(input_layer2, 2), 2);
}

void ModelConfig::Finalize() {
  auto require = [](std::size_t v, const char *name) {
    if (v == 0) throw ConfigError(std::string(name) + " must be positive");
  };
  if (encoder == EncoderKind::kSpeech) {
    require(speech.input_dim, "speech input dimension");
    require(speech.input_layer1, "first input layer size");
    require(speech.input_layer2, "second input layer size");
    require(speech.conv_filters, "convolution filter count");
    require(speech.num_layers, "encoder layer count");
    require(speech.cell_size, "encoder cell size");
    decoder.annotation_dim = speech.AnnotationDim();
  } else {
    require(text.vocab_size, "source vocabulary size");
    require(text.embedding_size, "source embedding size");
    require(text.cell_size, "encoder cell size");
    decoder.annotation_dim = text.AnnotationDim();
  }
  require(decoder.vocab_size, "target vocabulary size");
  require(decoder.cell_size, "decoder cell size");
  require(decoder.embedding_size, "target embedding size");
  require(decoder.attention_size, "attention size");
}

std::string ModelConfig::Describe() const {
  std::ostringstream os;
  if (encoder == EncoderKind::kSpeech) {
    os << "speech encoder: " << speech.input_dim << " -> " << speech.input_layer1 << " -> "
       << speech.input_layer2 << ", 2x conv(" << speech.conv_filters << ") -> "
       << speech.ConvOutputDim() << ", " << speech.num_layers << "x BiLSTM(" << speech.cell_size
       << ")";
  } else {
    os << "text encoder: vocab " << text.vocab_size << ", embedding " << text.embedding_size
       << ", BiLSTM(" << text.cell_size << ")";
  }
  os << "; decoder: vocab " << decoder.vocab_size << ", embedding " << decoder.embedding_size
     << ", cells " << decoder.cell_size << ", attention " << decoder.attention_size
     << ", output layer ";
  if (decoder.output_layer == 0) os << "none";
  else os << decoder.output_layer;
  return os.str();
}

}  // namespace slt
