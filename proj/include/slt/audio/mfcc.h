// include/slt/audio/mfcc.h
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

#ifndef SLT_AUDIO_MFCC_H_
#define SLT_AUDIO_MFCC_H_

#include <string>
#include <vector>

#include "slt/audio/wav.h"
#include "slt/tensor/tensor.h"

namespace slt {

// 40 MFCC + log frame energy, 10 ms step, 40 ms window. No mean/variance
// normalisation and no delta features are applied.
struct MfccConfig {
  double window_ms = 40.0;
  double step_ms = 10.0;
  int n_mfcc = 40;
  int n_mel_filters = 40;
  double pre_emphasis = 0.97;
  int fft_size = 0;  // 0: next power of two >= window length
  double energy_floor = 1e-10;
  double low_freq = 0.0;
  double high_freq = 0.0;  // 0: Nyquist

  int WindowSamples(int sample_rate) const;
  int StepSamples(int sample_rate) const;
  int FftSize(int sample_rate) const;
  /// Throws ConfigError on an inconsistent configuration.
  void Validate(int sample_rate) const;
  /// n_mfcc + 1.
  int FeatureDim() const { return n_mfcc + 1; }
};

struct FeatureMatrix {
  std::string id;
  Tensor frames;  // (T_x, n_mfcc + 1): cepstra then log energy

  std::size_t num_frames() const { return frames.dim(0); }
  std::size_t dim() const { return frames.dim(1); }
};

/// Frame count 1 + floor((L - W) / S); throws if L < W.
std::size_t NumFrames(std::size_t num_samples, int window, int step);

/// Pre-emphasised, Hamming-windowed frames, one row per frame.
Tensor FrameSignal(const PcmSignal &signal, const MfccConfig &config);

/// Mel filterbank weights, (n_mel_filters, fft_size / 2 + 1).
Tensor MelFilterbank(const MfccConfig &config, int sample_rate);
/// Centre frequency in Hz of each mel filter.
std::vector<double> MelCentreFrequencies(const MfccConfig &config, int sample_rate);

double HzToMel(double hz);
double MelToHz(double mel);

/// |FFT|^2 of a zero-padded frame, fft_size / 2 + 1 bins.
std::vector<double> PowerSpectrum(std::span<const double> frame, int fft_size);

/// Mel filterbank energies of one windowed frame (before the log).
std::vector<double> FilterbankEnergies(std::span<const double> frame,
                                       const MfccConfig &config, int sample_rate);

/// Cepstra (mel filterbank -> floored log -> orthonormal DCT-II) and floored
/// log frame energy for every windowed frame.
FeatureMatrix Mfcc(const Tensor &frames, const MfccConfig &config, int sample_rate);

FeatureMatrix ComputeFeatures(const PcmSignal &signal, const MfccConfig &config);

/// ReadWav + ComputeFeatures; the id is left empty for the caller to set.
FeatureMatrix ExtractFeatures(const std::string &wav_path, const MfccConfig &config);

}  // namespace slt

#endif  // SLT_AUDIO_MFCC_H_
