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

#include "ctcdec/posterior.h"

#include <cmath>
#include <string>

#include "ctcdec/common.h"

namespace ctcdec {

std::optional<int> FirstUnnormalizedFrame(int num_frames, int num_labels,
                                          std::span<const double> log_probs,
                                          double tolerance) {
  for (int t = 0; t < num_frames; ++t) {
    auto row = log_probs.subspan(static_cast<size_t>(t) * num_labels, num_labels);
    double sum = 0.0;
    for (double v : row) {
      if (std::isnan(v) || v == kInfinity) return t;
      sum += std::exp(v);
    }
    if (std::abs(sum - 1.0) > tolerance) return t;
  }
  return std::nullopt;
}

PosteriorMatrix::PosteriorMatrix(int num_frames, int num_labels,
                                 std::vector<double> log_probs, double tolerance)
    : num_frames_(num_frames), num_labels_(num_labels),
      values_(std::move(log_probs)) {
  if (num_frames < 1 || num_labels < 1) {
    throw Error(ErrorKind::kInvalidInput,
                "posterior matrix needs T >= 1 and K >= 1");
  }
  if (values_.size() != static_cast<size_t>(num_frames) * num_labels) {
    throw Error(ErrorKind::kInvalidInput,
                "posterior matrix has " + std::to_string(values_.size()) +
                    " values, expected T*K = " +
                    std::to_string(static_cast<size_t>(num_frames) * num_labels));
  }
  if (auto bad = FirstUnnormalizedFrame(num_frames, num_labels, values_,
                                        tolerance)) {
    throw Error(ErrorKind::kInvalidInput,
                "posterior frame " + std::to_string(*bad) +
                    " is not a probability distribution");
  }
}

PosteriorMatrix PosteriorMatrix::FromProbabilities(int num_frames,
                                                   int num_labels,
                                                   std::span<const double> probs,
                                                   double tolerance) {
  std::vector<double> logs(probs.size());
  for (size_t i = 0; i < probs.size(); ++i) {
    logs[i] = probs[i] > 0.0 ? std::log(probs[i]) : kLogZero;
  }
  return PosteriorMatrix(num_frames, num_labels, std::move(logs), tolerance);
}

PriorVector::PriorVector(std::vector<double> log_priors, double tolerance)
    : log_priors_(std::move(log_priors)) {
  if (log_priors_.empty()) {
    throw Error(ErrorKind::kInvalidInput, "prior vector is empty");
  }
  double sum = 0.0;
  for (size_t k = 0; k < log_priors_.size(); ++k) {
    if (!std::isfinite(log_priors_[k])) {
      throw Error(ErrorKind::kInvalidInput,
                  "prior for label " + std::to_string(k) + " is not finite");
    }
    sum += std::exp(log_priors_[k]);
  }
  if (std::abs(sum - 1.0) > tolerance) {
    throw Error(ErrorKind::kInvalidInput,
                "priors sum to " + std::to_string(sum) + ", expected 1");
  }
}

Transcription Squash(std::span<const int> labels, int num_labels) {
  Transcription out;
  int previous = Alphabet::kBlank;
  for (size_t t = 0; t < labels.size(); ++t) {
    int label = labels[t];
    if (label < 0 || label >= num_labels) {
      throw Error(ErrorKind::kInvalidInput,
                  "path label " + std::to_string(label) + " at frame " +
                      std::to_string(t) + " is outside the alphabet");
    }
    if (label != Alphabet::kBlank && label != previous) {
      out.labels.push_back(label);
    }
    previous = label;
  }
  return out;
}

Transcription Squash(const Path& path, const Alphabet& alphabet) {
  return Squash(path.labels, alphabet.size());
}

}  // namespace ctcdec
