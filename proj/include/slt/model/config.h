// include/slt/model/config.h
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

#ifndef SLT_MODEL_CONFIG_H_
#define SLT_MODEL_CONFIG_H_

#include <cstddef>
#include <string>

namespace slt {

// Defaults are the LibriSpeech sizes.

struct SpeechEncoderConfig {
  std::size_t input_dim = 41;       // 40 MFCC + energy
  std::size_t input_layer1 = 256;   // first tanh layer
  std::size_t input_layer2 = 128;   // n'
  std::size_t conv_filters = 16;
  std::size_t num_layers = 3;       // bidirectional LSTM layers
  std::size_t cell_size = 256;      // m, per direction

  /// Width of the flattened second convolution: filters * ceil(ceil(n'/2)/2).
  std::size_t ConvOutputDim() const;
  std::size_t AnnotationDim() const { return 2 * cell_size; }
};

struct TextEncoderConfig {
  std::size_t vocab_size = 0;
  std::size_t embedding_size = 256;
  std::size_t cell_size = 256;  // one bidirectional layer

  std::size_t AnnotationDim() const { return 2 * cell_size; }
};

struct DecoderConfig {
  std::size_t vocab_size = 0;
  std::size_t cell_size = 512;       // m'
  std::size_t embedding_size = 128;  // k
  std::size_t output_layer = 512;    // l; 0 disables the tanh output layer
  std::size_t attention_size = 512;  // hidden layer of the attention network (m')
  std::size_t annotation_dim = 512;  // 2m of the attached encoder

  /// m' + 2m + k, the width entering the output layer.
  std::size_t OutputInputDim() const { return cell_size + annotation_dim + embedding_size; }
};

enum class EncoderKind { kSpeech, kText };

struct ModelConfig {
  EncoderKind encoder = EncoderKind::kSpeech;
  SpeechEncoderConfig speech;
  TextEncoderConfig text;
  DecoderConfig decoder;

  /// Copies the encoder's annotation width into the decoder and checks sizes.
  void Finalize();
  std::string Describe() const;
};

}  // namespace slt

#endif  // SLT_MODEL_CONFIG_H_
