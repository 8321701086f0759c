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

#include "ctcdec/kernels.h"

#include <omp.h>

#include <cmath>
#include <string>

#include "ctcdec/common.h"

namespace ctcdec {
namespace {

int Threads(int requested) {
  return requested > 0 ? requested : omp_get_max_threads();
}

void CheckPriorShape(const PosteriorMatrix& posteriors,
                     const PriorVector& prior) {
  if (posteriors.num_labels() != prior.size()) {
    throw Error(ErrorKind::kInvalidInput,
                "prior has " + std::to_string(prior.size()) +
                    " labels but posteriors have " +
                    std::to_string(posteriors.num_labels()));
  }
}

int CheckPriorInputs(std::span<const PosteriorMatrix> posteriors) {
  if (posteriors.empty()) {
    throw Error(ErrorKind::kInvalidInput,
                "prior estimation needs at least one posterior matrix");
  }
  int num_labels = posteriors[0].num_labels();
  for (const auto& m : posteriors) {
    if (m.num_labels() != num_labels) {
      throw Error(ErrorKind::kInvalidInput,
                  "posterior matrices disagree on the label count");
    }
  }
  return num_labels;
}

PriorVector FloorAndNormalize(std::vector<double> mean, double floor) {
  double total = 0.0;
  for (double& p : mean) {
    p = std::max(p, floor);
    total += p;
  }
  for (double& p : mean) p = std::log(p / total);
  return PriorVector(std::move(mean), kRowTolerance);
}

inline int ArgmaxRow(std::span<const double> row) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(row.size()); ++k) {
    if (row[k] > row[best]) best = k;
  }
  return best;
}

}  // namespace

ScoreMatrix ApplyPriorScaling(const PosteriorMatrix& posteriors,
                              const PriorVector& prior, int num_threads) {
  CheckPriorShape(posteriors, prior);
  const int T = posteriors.num_frames();
  const int K = posteriors.num_labels();
  ScoreMatrix scores(T, K);
#pragma omp parallel for num_threads(Threads(num_threads)) schedule(static)
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < K; ++k) scores(t, k) = posteriors(t, k) - prior[k];
  }
  return scores;
}

Path BestPath(const PosteriorMatrix& posteriors, int num_threads) {
  const int T = posteriors.num_frames();
  Path path{std::vector<int>(T)};
#pragma omp parallel for num_threads(Threads(num_threads)) schedule(static)
  for (int t = 0; t < T; ++t) path.labels[t] = ArgmaxRow(posteriors.Row(t));
  return path;
}

PriorVector EstimatePriors(std::span<const PosteriorMatrix> posteriors,
                           double floor, int num_threads) {
  const int K = CheckPriorInputs(posteriors);
  size_t total_frames = 0;
  for (const auto& m : posteriors) total_frames += m.num_frames();
  std::vector<double> mean(K, 0.0);
  // One label per iteration; each column is summed in the serial frame order.
#pragma omp parallel for num_threads(Threads(num_threads)) schedule(static)
  for (int k = 0; k < K; ++k) {
    double sum = 0.0;
    for (const auto& m : posteriors) {
      for (int t = 0; t < m.num_frames(); ++t) sum += std::exp(m(t, k));
    }
    mean[k] = sum / static_cast<double>(total_frames);
  }
  return FloorAndNormalize(std::move(mean), floor);
}

namespace serial {

ScoreMatrix ApplyPriorScaling(const PosteriorMatrix& posteriors,
                              const PriorVector& prior) {
  CheckPriorShape(posteriors, prior);
  ScoreMatrix scores(posteriors.num_frames(), posteriors.num_labels());
  for (int t = 0; t < posteriors.num_frames(); ++t) {
    for (int k = 0; k < posteriors.num_labels(); ++k) {
      scores(t, k) = posteriors(t, k) - prior[k];
    }
  }
  return scores;
}

Path BestPath(const PosteriorMatrix& posteriors) {
  Path path;
  path.labels.reserve(posteriors.num_frames());
  for (int t = 0; t < posteriors.num_frames(); ++t) {
    path.labels.push_back(ArgmaxRow(posteriors.Row(t)));
  }
  return path;
}

PriorVector EstimatePriors(std::span<const PosteriorMatrix> posteriors,
                           double floor) {
  const int K = CheckPriorInputs(posteriors);
  std::vector<double> sum(K, 0.0);
  size_t total_frames = 0;
  for (int k = 0; k < K; ++k) {
    for (const auto& m : posteriors) {
      for (int t = 0; t < m.num_frames(); ++t) sum[k] += std::exp(m(t, k));
    }
  }
  for (const auto& m : posteriors) total_frames += m.num_frames();
  for (double& s : sum) s /= static_cast<double>(total_frames);
  return FloorAndNormalize(std::move(sum), floor);
}

}  // namespace serial
}  // namespace ctcdec
