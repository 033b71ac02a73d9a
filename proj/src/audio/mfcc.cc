// src/audio/mfcc.cc
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

#include "slt/audio/mfcc.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "slt/base/error.h"

namespace slt {

namespace {

// In-place iterative radix-2 FFT; n must be a power of two.
void Fft(std::vector<std::complex<double>> *data) {
  auto &a = *data;
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> w = std::polar(1.0, angle * static_cast<double>(k));
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace

int MfccConfig::WindowSamples(int sample_rate) const {
  return static_cast<int>(std::lround(window_ms * sample_rate / 1000.0));
}

int MfccConfig::StepSamples(int sample_rate) const {
  return static_cast<int>(std::lround(step_ms * sample_rate / 1000.0));
}

int MfccConfig::FftSize(int sample_rate) const {
  if (fft_size > 0) return fft_size;
  int n = 1;
  while (n < WindowSamples(sample_rate)) n <<= 1;
  return n;
}

void MfccConfig::Validate(int sample_rate) const {
  if (sample_rate <= 0) throw ConfigError("sample rate must be positive");
  if (step_ms <= 0 || window_ms < step_ms)
    throw ConfigError("need window_ms >= step_ms > 0");
  if (n_mfcc < 1 || n_mfcc > n_mel_filters)
    throw ConfigError("need 1 <= n_mfcc <= n_mel_filters");
  const int fft = FftSize(sample_rate);
  if (fft < WindowSamples(sample_rate) || (fft & (fft - 1)) != 0)
    throw ConfigError("fft_size must be a power of two >= the window length");
  if (!(energy_floor > 0.0)) throw ConfigError("energy_floor must be positive");
  const double nyquist = sample_rate / 2.0;
  const double high = high_freq > 0 ? high_freq : nyquist;
  if (low_freq < 0 || high > nyquist || low_freq >= high)
    throw ConfigError("invalid mel band limits");
}

std::size_t NumFrames(std::size_t num_samples, int window, int step) {
  if (num_samples < static_cast<std::size_t>(window))
    throw FormatError("signal of " + std::to_string(num_samples) +
                      " samples is shorter than one window of " + std::to_string(window));
  return 1 + (num_samples - window) / step;
}

Tensor FrameSignal(const PcmSignal &signal, const MfccConfig &config) {
  config.Validate(signal.sample_rate);
  for (double s : signal.samples)
    if (!std::isfinite(s)) throw NumericError("non-finite audio sample");
  const int window = config.WindowSamples(signal.sample_rate);
  const int step = config.StepSamples(signal.sample_rate);
  const std::size_t count = NumFrames(signal.samples.size(), window, step);

  std::vector<double> emphasised(signal.samples.size());
  for (std::size_t i = 0; i < emphasised.size(); ++i)
    emphasised[i] = signal.samples[i] - (i ? config.pre_emphasis * signal.samples[i - 1] : 0.0);

  std::vector<double> hamming(window);
  for (int i = 0; i < window; ++i)
    hamming[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (window - 1));

  Tensor frames(Shape{count, static_cast<std::size_t>(window)});
  for (std::size_t f = 0; f < count; ++f)
    for (int i = 0; i < window; ++i)
      frames.at(f, i) = emphasised[f * step + i] * hamming[i];
  return frames;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

namespace {

std::vector<double> MelPoints(const MfccConfig &config, int sample_rate) {
  const double high = config.high_freq > 0 ? config.high_freq : sample_rate / 2.0;
  const double lo = HzToMel(config.low_freq), hi = HzToMel(high);
  std::vector<double> points(config.n_mel_filters + 2);
  for (std::size_t i = 0; i < points.size(); ++i)
    points[i] = lo + (hi - lo) * static_cast<double>(i) / (config.n_mel_filters + 1);
  return points;
}

}  // namespace

std::vector<double> MelCentreFrequencies(const MfccConfig &config, int sample_rate) {
  const std::vector<double> points = MelPoints(config, sample_rate);
  std::vector<double> centres;
  for (int m = 0; m < config.n_mel_filters; ++m) centres.push_back(MelToHz(points[m + 1]));
  return centres;
}

Tensor MelFilterbank(const MfccConfig &config, int sample_rate) {
  config.Validate(sample_rate);
  const int fft = config.FftSize(sample_rate);
  const std::size_t bins = fft / 2 + 1;
  const std::vector<double> points = MelPoints(config, sample_rate);
  Tensor fb(Shape{static_cast<std::size_t>(config.n_mel_filters), bins});
  for (int m = 0; m < config.n_mel_filters; ++m) {
    const double left = points[m], centre = points[m + 1], right = points[m + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double mel = HzToMel(static_cast<double>(k) * sample_rate / fft);
      const double w = std::min((mel - left) / (centre - left), (right - mel) / (right - centre));
      fb.at(m, k) = std::max(0.0, w);
    }
  }
  return fb;
}

std::vector<double> PowerSpectrum(std::span<const double> frame, int fft_size) {
  if (frame.size() > static_cast<std::size_t>(fft_size))
    throw DimensionError("frame longer than the FFT size");
  std::vector<std::complex<double>> buf(fft_size);
  std::copy(frame.begin(), frame.end(), buf.begin());
  Fft(&buf);
  std::vector<double> power(fft_size / 2 + 1);
  for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(buf[k]);
  return power;
}

namespace {

std::vector<double> ApplyFilterbank(const Tensor &fb, const std::vector<double> &power) {
  std::vector<double> energies(fb.dim(0), 0.0);
  for (std::size_t m = 0; m < fb.dim(0); ++m)
    for (std::size_t k = 0; k < power.size(); ++k) energies[m] += fb.at(m, k) * power[k];
  return energies;
}

}  // namespace

std::vector<double> FilterbankEnergies(std::span<const double> frame, const MfccConfig &config,
                                       int sample_rate) {
  return ApplyFilterbank(MelFilterbank(config, sample_rate),
                         PowerSpectrum(frame, config.FftSize(sample_rate)));
}

FeatureMatrix Mfcc(const Tensor &frames, const MfccConfig &config, int sample_rate) {
  config.Validate(sample_rate);
  if (frames.rank() != 2) throw DimensionError("Mfcc expects a (frames, samples) matrix");
  const Tensor fb = MelFilterbank(config, sample_rate);
  const int fft = config.FftSize(sample_rate);
  const std::size_t n_mel = config.n_mel_filters;
  const std::size_t n_ceps = config.n_mfcc;
  const double log_floor = std::log(config.energy_floor);

  // orthonormal DCT-II basis
  Tensor dct(Shape{n_ceps, n_mel});
  for (std::size_t j = 0; j < n_ceps; ++j) {
    const double scale = std::sqrt((j == 0 ? 1.0 : 2.0) / static_cast<double>(n_mel));
    for (std::size_t i = 0; i < n_mel; ++i)
      dct.at(j, i) = scale * std::cos(std::numbers::pi * j * (i + 0.5) / n_mel);
  }

  const std::size_t count = frames.dim(0), width = frames.dim(1);
  FeatureMatrix out;
  out.frames = Tensor(Shape{count, n_ceps + 1});
  std::vector<double> log_mel(n_mel);
  for (std::size_t f = 0; f < count; ++f) {
    std::span<const double> frame(frames.data() + f * width, width);
    const std::vector<double> energies = ApplyFilterbank(fb, PowerSpectrum(frame, fft));
    for (std::size_t m = 0; m < n_mel; ++m)
      log_mel[m] = std::max(std::log(energies[m]), log_floor);
    for (std::size_t j = 0; j < n_ceps; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n_mel; ++i) s += dct.at(j, i) * log_mel[i];
      out.frames.at(f, j) = s;
    }
    double energy = 0.0;
    for (double v : frame) energy += v * v;
    out.frames.at(f, n_ceps) = std::max(std::log(energy), log_floor);
  }
  return out;
}

FeatureMatrix ComputeFeatures(const PcmSignal &signal, const MfccConfig &config) {
  return Mfcc(FrameSignal(signal, config), config, signal.sample_rate);
}

FeatureMatrix ExtractFeatures(const std::string &wav_path, const MfccConfig &config) {
  return ComputeFeatures(ReadWav(wav_path), config);
}

}  // namespace slt
