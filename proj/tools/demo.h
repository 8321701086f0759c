// Copyright 2026 The ctcdec Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end toy experiment: train both LMs on the bundled corpus, build the
// search graph, synthesize noisy posteriors for the test transcripts and
// compare greedy, beam + character LM and WFST decoding.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ctcdec/alphabet.h"
#include "ctcdec/posterior.h"
#include "ctcdec/score.h"

namespace ctcdec::demo {

// Portable uniform draw in [0, 1) (std::uniform_real_distribution is not
// specified bit-for-bit across standard libraries).
double Uniform(std::mt19937_64& rng);

struct NoiseConfig {
  // Probability that a character's frames favour another label.
  double confusion_rate = 0.25;
  double clean_peak = 0.70;
  double confused_peak = 0.45;
  double confused_true = 0.30;
  double blank_peak = 0.80;
};

// Frame-level posteriors for `labels` (a transcription, no blanks): each
// label lasts 1-2 frames, blanks separate labels at random and always
// separate repeats, and the utterance is padded with one blank frame on each
// side.
PosteriorMatrix SynthesizePosteriors(const std::vector<int>& labels,
                                     int num_labels, std::mt19937_64& rng,
                                     const NoiseConfig& noise = {});

// <blk>, a-z, <sp>.
Alphabet DemoAlphabet();

// Maps lowercase text to labels of DemoAlphabet(); other characters throw
// kInvalidInput.
std::vector<int> TextToLabels(const std::string& text, const Alphabet& alphabet);

struct DemoOptions {
  std::filesystem::path data_dir;
  uint64_t seed = 1234;
  int threads = 1;
  // When set, every intermediate artifact is written here.
  std::optional<std::filesystem::path> work_dir;
  int charlm_order = 6;
  int wordlm_order = 3;
  int beam_width = 32;
  double insertion_bonus = 2.5;
};

struct DemoResult {
  CompareReport compare;
  Transcripts reference;
  Transcripts greedy;
  Transcripts beam;
  Transcripts wfst;
  size_t graph_states = 0;
  size_t graph_arcs = 0;
  // Human-readable summary, byte-identical for identical options apart from
  // `threads`.
  std::string report;
};

DemoResult RunDemo(const DemoOptions& options);

}  // namespace ctcdec::demo
