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

#pragma once

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "ctcdec/alphabet.h"

namespace ctcdec {

// Row-sum tolerance for freshly computed rows and for rows read from f32 files.
inline constexpr double kRowTolerance = 1e-6;
inline constexpr double kFileRowTolerance = 1e-3;

// Returns the first frame whose probabilities do not sum to one within
// `tolerance` (or that holds a NaN / +inf), if any.
std::optional<int> FirstUnnormalizedFrame(int num_frames, int num_labels,
                                          std::span<const double> log_probs,
                                          double tolerance);

// T x K per-frame natural-log label posteriors, frame-major.
class PosteriorMatrix {
 public:
  PosteriorMatrix(int num_frames, int num_labels, std::vector<double> log_probs,
                  double tolerance = kRowTolerance);

  // Takes linear probabilities (zeros become -inf).
  static PosteriorMatrix FromProbabilities(int num_frames, int num_labels,
                                           std::span<const double> probs,
                                           double tolerance = kRowTolerance);

  int num_frames() const { return num_frames_; }
  int num_labels() const { return num_labels_; }
  double operator()(int t, int k) const { return values_[t * num_labels_ + k]; }
  std::span<const double> Row(int t) const {
    return {values_.data() + static_cast<size_t>(t) * num_labels_,
            static_cast<size_t>(num_labels_)};
  }
  std::span<const double> data() const { return values_; }

  bool operator==(const PosteriorMatrix&) const = default;

 private:
  int num_frames_;
  int num_labels_;
  std::vector<double> values_;
};

// Un-normalized per-cell log scores (e.g. prior-scaled posteriors).
class ScoreMatrix {
 public:
  ScoreMatrix(int num_frames, int num_labels)
      : num_frames_(num_frames), num_labels_(num_labels),
        values_(static_cast<size_t>(num_frames) * num_labels, 0.0) {}

  int num_frames() const { return num_frames_; }
  int num_labels() const { return num_labels_; }
  double operator()(int t, int k) const { return values_[t * num_labels_ + k]; }
  double& operator()(int t, int k) { return values_[t * num_labels_ + k]; }
  std::span<const double> Row(int t) const {
    return {values_.data() + static_cast<size_t>(t) * num_labels_,
            static_cast<size_t>(num_labels_)};
  }
  std::span<const double> data() const { return values_; }

  bool operator==(const ScoreMatrix&) const = default;

 private:
  int num_frames_;
  int num_labels_;
  std::vector<double> values_;
};

// Natural-log label priors log P(k); every entry finite, sums to one.
class PriorVector {
 public:
  explicit PriorVector(std::vector<double> log_priors,
                       double tolerance = kFileRowTolerance);
  int size() const { return static_cast<int>(log_priors_.size()); }
  double operator[](int k) const { return log_priors_[k]; }
  std::span<const double> data() const { return log_priors_; }

  bool operator==(const PriorVector&) const = default;

 private:
  std::vector<double> log_priors_;
};

// A frame-level labelling, one alphabet index per frame (blanks allowed).
struct Path {
  std::vector<int> labels;
  auto operator<=>(const Path&) const = default;
};

// A blank-free label sequence.
struct Transcription {
  std::vector<int> labels;
  size_t size() const { return labels.size(); }
  bool empty() const { return labels.empty(); }
  auto operator<=>(const Transcription&) const = default;
};

// Removes blanks and merges repeated labels that are not separated by a blank.
// Throws kInvalidInput on an index outside the alphabet.
Transcription Squash(const Path& path, const Alphabet& alphabet);
Transcription Squash(std::span<const int> labels, int num_labels);

}  // namespace ctcdec
