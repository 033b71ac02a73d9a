// tests/unit/audio-test.cc
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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"
#include "slt/audio/feature-cache.h"
#include "slt/audio/mfcc.h"
#include "slt/audio/wav.h"
#include "slt/base/binary-io.h"
#include "slt/base/error.h"

using namespace slt;
namespace fs = std::filesystem;

namespace {

PcmSignal Sine(double hz, double seconds, double amplitude = 0.5, int rate = 16000) {
  PcmSignal s;
  s.sample_rate = rate;
  const auto n = static_cast<std::size_t>(seconds * rate);
  for (std::size_t i = 0; i < n; ++i)
    s.samples.push_back(amplitude * std::sin(2.0 * std::numbers::pi * hz * i / rate));
  return s;
}

fs::path TempPath(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / "slt-audio-test";
  fs::create_directories(dir);
  return dir / name;
}

// Direct O(N^2) DFT and independently built triangular mel filters.
std::vector<double> OracleFilterbank(const std::vector<double> &frame, int fft, int rate,
                                     int filters) {
  const std::size_t bins = fft / 2 + 1;
  std::vector<double> power(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    double re = 0, im = 0;
    for (std::size_t n = 0; n < frame.size(); ++n) {
      re += frame[n] * std::cos(2 * std::numbers::pi * k * n / fft);
      im -= frame[n] * std::sin(2 * std::numbers::pi * k * n / fft);
    }
    power[k] = re * re + im * im;
  }
  auto mel = [](double f) { return 1127.0 * std::log(1.0 + f / 700.0); };
  const double top = mel(rate / 2.0);
  std::vector<double> out(filters, 0.0);
  for (int m = 0; m < filters; ++m) {
    const double l = top * m / (filters + 1), c = top * (m + 1) / (filters + 1),
                 r = top * (m + 2) / (filters + 1);
    for (std::size_t k = 0; k < bins; ++k) {
      const double x = mel(static_cast<double>(k) * rate / fft);
      double w = 0;
      if (x > l && x <= c) w = (x - l) / (c - l);
      else if (x > c && x < r) w = (r - x) / (r - c);
      out[m] += w * power[k];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("frame count formula") {
  MfccConfig cfg;
  CHECK(cfg.WindowSamples(16000) == 640);
  CHECK(cfg.StepSamples(16000) == 160);
  CHECK(cfg.FftSize(16000) == 1024);
  CHECK(FrameSignal(Sine(440, 1.0), cfg).dim(0) == 97);
  PcmSignal exact;
  exact.samples.assign(640, 0.1);
  CHECK(FrameSignal(exact, cfg).dim(0) == 1);
  exact.samples.pop_back();
  CHECK_THROWS_AS(FrameSignal(exact, cfg), FormatError);
}

TEST_CASE("all-zero signal gives the floored closed form") {
  MfccConfig cfg;
  PcmSignal silence;
  silence.samples.assign(16000, 0.0);
  FeatureMatrix f = ComputeFeatures(silence, cfg);
  REQUIRE(f.dim() == 41);
  const double lf = std::log(cfg.energy_floor);
  for (std::size_t t = 0; t < f.num_frames(); ++t) {
    // DCT-II (orthonormal) of a constant vector: only c0 = sqrt(40) * value
    CHECK(std::fabs(f.frames.at(t, 0) - std::sqrt(40.0) * lf) < 1e-9);
    for (std::size_t j = 1; j < 40; ++j) CHECK(std::fabs(f.frames.at(t, j)) < 1e-9);
    CHECK(f.frames.at(t, 40) == lf);
    for (std::size_t j = 0; j < 41; ++j) CHECK(f.frames.at(t, j) == f.frames.at(0, j));
  }
}

TEST_CASE("pure tone peaks in the filter nearest its frequency") {
  MfccConfig cfg;
  const Tensor frames = FrameSignal(Sine(1000.0, 0.2), cfg);
  std::vector<double> frame(frames.data() + 5 * frames.dim(1),
                            frames.data() + 6 * frames.dim(1));
  const std::vector<double> energies = FilterbankEnergies(frame, cfg, 16000);
  const std::vector<double> oracle = OracleFilterbank(frame, 1024, 16000, 40);
  const auto argmax = [](const std::vector<double> &v) {
    return std::max_element(v.begin(), v.end()) - v.begin();
  };
  const std::vector<double> centres = MelCentreFrequencies(cfg, 16000);
  std::ptrdiff_t nearest = 0;
  for (std::size_t m = 0; m < centres.size(); ++m)
    if (std::fabs(centres[m] - 1000) < std::fabs(centres[nearest] - 1000)) nearest = m;
  CHECK(argmax(energies) == argmax(oracle));
  CHECK(argmax(energies) == nearest);
  for (std::size_t m = 0; m < energies.size(); ++m)
    CHECK(energies[m] == doctest::Approx(oracle[m]).epsilon(1e-6).scale(1e-6));
}

TEST_CASE("filterbank covers its band") {
  MfccConfig cfg;
  const Tensor fb = MelFilterbank(cfg, 16000);
  REQUIRE(fb.dim(0) == 40);
  REQUIRE(fb.dim(1) == 513);
  for (double v : fb.values()) CHECK(v >= 0.0);
  // bins strictly inside (lowest edge, highest edge) carry weight
  const double hi_edge = 8000.0;
  for (std::size_t k = 1; k < fb.dim(1); ++k) {
    const double f = k * 16000.0 / 1024;
    if (f >= hi_edge) continue;
    double total = 0;
    for (std::size_t m = 0; m < 40; ++m) total += fb.at(m, k);
    CHECK(total > 0.0);
  }
}

TEST_CASE("energy column is monotone in amplitude") {
  MfccConfig cfg;
  std::mt19937_64 rng(2);
  std::normal_distribution<double> noise(0.0, 0.1);
  PcmSignal base;
  for (int i = 0; i < 4000; ++i) base.samples.push_back(noise(rng));
  FeatureMatrix small = ComputeFeatures(base, cfg);
  for (double &s : base.samples) s *= 2.5;
  FeatureMatrix large = ComputeFeatures(base, cfg);
  for (std::size_t t = 0; t < small.num_frames(); ++t)
    CHECK(large.frames.at(t, 40) >= small.frames.at(t, 40));
}

TEST_CASE("wav files: extraction, determinism, format errors") {
  const fs::path wav = TempPath("tone.wav");
  WriteWav(wav.string(), Sine(300, 1.0));
  MfccConfig cfg;
  FeatureMatrix a = ExtractFeatures(wav.string(), cfg);
  FeatureMatrix b = ExtractFeatures(wav.string(), cfg);
  CHECK(a.num_frames() == 97);
  CHECK(a.dim() == 41);
  CHECK(a.frames == b.frames);

  const fs::path stereo = TempPath("stereo.wav");
  {
    std::ofstream os(stereo, std::ios::binary);
    os.write("RIFF", 4);
    WriteU32(os, 36 + 8);
    os.write("WAVEfmt ", 8);
    WriteU32(os, 16);
    WriteU16(os, 1);
    WriteU16(os, 2);
    WriteU32(os, 16000);
    WriteU32(os, 64000);
    WriteU16(os, 4);
    WriteU16(os, 16);
    os.write("data", 4);
    WriteU32(os, 8);
    WriteU32(os, 0);
    WriteU32(os, 0);
  }
  try {
    ReadWav(stereo.string());
    FAIL("stereo accepted");
  } catch (const FormatError &e) {
    CHECK(std::string(e.what()).find("mono") != std::string::npos);
  }
  CHECK_THROWS_AS(ReadWav(TempPath("missing.wav").string()), FormatError);
}

TEST_CASE("feature cache round trip") {
  MfccConfig cfg;
  std::vector<FeatureMatrix> utts;
  for (int i = 0; i < 3; ++i) {
    FeatureMatrix f = ComputeFeatures(Sine(200 + 100 * i, 0.1 + 0.05 * i), cfg);
    f.id = "utt" + std::to_string(i);
    utts.push_back(f);
  }
  const fs::path path = TempPath("feats.sltf");
  WriteFeatureCache(path.string(), utts);
  std::vector<FeatureMatrix> back = ReadFeatureCache(path.string());
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back[i].id == utts[i].id);
    REQUIRE(back[i].frames.shape() == utts[i].frames.shape());
    for (std::size_t k = 0; k < back[i].frames.size(); ++k)
      CHECK(back[i].frames[k] == static_cast<double>(static_cast<float>(utts[i].frames[k])));
  }
  {
    std::ofstream os(TempPath("bad.sltf"), std::ios::binary);
    os << "NOPE";
  }
  CHECK_THROWS_AS(ReadFeatureCache(TempPath("bad.sltf").string()), FormatError);
}
