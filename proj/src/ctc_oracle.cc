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

#include "ctcdec/ctc_oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ctcdec/common.h"

namespace ctcdec {
namespace {

void CheckTranscription(const Transcription& z, int num_labels) {
  for (int label : z.labels) {
    if (label <= Alphabet::kBlank || label >= num_labels) {
      throw Error(ErrorKind::kInvalidInput,
                  "transcription label " + std::to_string(label) +
                      " is blank or outside the alphabet");
    }
  }
}

// Shared forward recursion; `combine` is LogAdd for the sum and max for the
// Viterbi score. cell(t, k) returns the per-frame log score.
template <typename Cell, typename Combine>
double ForwardRecursion(const Transcription& z, int num_frames, Cell cell,
                        Combine combine) {
  const std::vector<int> aug = AugmentWithBlanks(z);
  const int S = static_cast<int>(aug.size());
  std::vector<double> alpha(S, kLogZero), next(S, kLogZero);
  alpha[0] = cell(0, aug[0]);
  if (S > 1) alpha[1] = cell(0, aug[1]);
  for (int t = 1; t < num_frames; ++t) {
    for (int s = 0; s < S; ++s) {
      double acc = alpha[s];
      if (s >= 1) acc = combine(acc, alpha[s - 1]);
      // Skipping the blank between two labels is only allowed when they differ.
      if (s >= 2 && aug[s] != Alphabet::kBlank && aug[s] != aug[s - 2]) {
        acc = combine(acc, alpha[s - 2]);
      }
      next[s] = acc == kLogZero ? kLogZero : acc + cell(t, aug[s]);
    }
    std::swap(alpha, next);
  }
  double result = alpha[S - 1];
  if (S > 1) result = combine(result, alpha[S - 2]);
  return result;
}

// Visits every path in lexicographic order; stops early if visit returns false.
void ForEachPath(int num_frames, int num_labels,
                 const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> path(num_frames, 0);
  while (true) {
    visit(path);
    int t = num_frames - 1;
    while (t >= 0 && ++path[t] == num_labels) {
      path[t] = 0;
      --t;
    }
    if (t < 0) return;
  }
}

void CheckCapacity(const PosteriorMatrix& posteriors, uint64_t cap) {
  uint64_t count = PathCount(posteriors.num_frames(), posteriors.num_labels());
  if (count > cap) {
    throw Error(ErrorKind::kCapacity,
                "enumerating " + std::to_string(posteriors.num_labels()) + "^" +
                    std::to_string(posteriors.num_frames()) +
                    " paths exceeds the cap of " + std::to_string(cap));
  }
}

double PathLogProbabilityUnchecked(const std::vector<int>& path,
                                   const PosteriorMatrix& posteriors) {
  double sum = 0.0;
  for (size_t t = 0; t < path.size(); ++t) {
    double v = posteriors(static_cast<int>(t), path[t]);
    if (v == kLogZero) return kLogZero;
    sum += v;
  }
  return sum;
}

}  // namespace

std::vector<int> AugmentWithBlanks(const Transcription& z) {
  std::vector<int> aug;
  aug.reserve(2 * z.size() + 1);
  aug.push_back(Alphabet::kBlank);
  for (int label : z.labels) {
    aug.push_back(label);
    aug.push_back(Alphabet::kBlank);
  }
  return aug;
}

double PathLogProbability(const Path& path, const PosteriorMatrix& posteriors) {
  if (static_cast<int>(path.labels.size()) != posteriors.num_frames()) {
    throw Error(ErrorKind::kInvalidInput,
                "path length " + std::to_string(path.labels.size()) +
                    " does not match T = " +
                    std::to_string(posteriors.num_frames()));
  }
  for (int label : path.labels) {
    if (label < 0 || label >= posteriors.num_labels()) {
      throw Error(ErrorKind::kInvalidInput,
                  "path label " + std::to_string(label) + " outside the alphabet");
    }
  }
  return PathLogProbabilityUnchecked(path.labels, posteriors);
}

double SequenceLogProbability(const Transcription& z,
                              const PosteriorMatrix& posteriors) {
  CheckTranscription(z, posteriors.num_labels());
  if (z.size() > static_cast<size_t>(posteriors.num_frames())) return kLogZero;
  return ForwardRecursion(
      z, posteriors.num_frames(),
      [&](int t, int k) { return posteriors(t, k); }, LogAdd);
}

double BestAlignmentScore(const Transcription& z, const ScoreMatrix& scores) {
  CheckTranscription(z, scores.num_labels());
  if (z.size() > static_cast<size_t>(scores.num_frames())) return kLogZero;
  return ForwardRecursion(
      z, scores.num_frames(), [&](int t, int k) { return scores(t, k); },
      [](double a, double b) { return std::max(a, b); });
}

uint64_t PathCount(int num_frames, int num_labels) {
  uint64_t count = 1;
  for (int t = 0; t < num_frames; ++t) {
    if (count > UINT64_MAX / static_cast<uint64_t>(num_labels)) return UINT64_MAX;
    count *= static_cast<uint64_t>(num_labels);
  }
  return count;
}

double BruteForceSequenceLogProbability(const Transcription& z,
                                        const PosteriorMatrix& posteriors,
                                        uint64_t cap) {
  CheckTranscription(z, posteriors.num_labels());
  CheckCapacity(posteriors, cap);
  const int K = posteriors.num_labels();
  // Accumulate in the linear domain, rescaled by the best matching path.
  std::vector<double> matching;
  ForEachPath(posteriors.num_frames(), K, [&](const std::vector<int>& path) {
    if (Squash(path, K) == z) {
      double lp = PathLogProbabilityUnchecked(path, posteriors);
      if (lp != kLogZero) matching.push_back(lp);
    }
  });
  return LogSumExp(matching);
}

std::map<Transcription, double> EnumerateTranscriptions(
    const PosteriorMatrix& posteriors, uint64_t cap) {
  CheckCapacity(posteriors, cap);
  const int K = posteriors.num_labels();
  std::map<Transcription, std::vector<double>> terms;
  ForEachPath(posteriors.num_frames(), K, [&](const std::vector<int>& path) {
    double lp = PathLogProbabilityUnchecked(path, posteriors);
    if (lp != kLogZero) terms[Squash(path, K)].push_back(lp);
  });
  std::map<Transcription, double> out;
  for (auto& [z, values] : terms) out.emplace(z, LogSumExp(values));
  return out;
}

}  // namespace ctcdec
