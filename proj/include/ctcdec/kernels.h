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

// Data-parallel kernels over posterior matrices.
//
// Every kernel has an OpenMP version (ctcdec::) and a plain serial version
// (ctcdec::serial::). The serial versions are the reference the parallel ones
// are tested against and benchmarked with; results must be bit-identical for
// every thread count, so no kernel reduces across threads.

#pragma once

#include <span>
#include <vector>

#include "ctcdec/posterior.h"

namespace ctcdec {

inline constexpr double kDefaultPriorFloor = 1e-8;

// num_threads <= 0 means "OpenMP default".
ScoreMatrix ApplyPriorScaling(const PosteriorMatrix& posteriors,
                              const PriorVector& prior, int num_threads = 0);

// Per-frame argmax; ties go to the lowest label index.
Path BestPath(const PosteriorMatrix& posteriors, int num_threads = 0);

// Mean per-label probability over all frames of all matrices, floored at
// `floor` and renormalized.
PriorVector EstimatePriors(std::span<const PosteriorMatrix> posteriors,
                           double floor = kDefaultPriorFloor,
                           int num_threads = 0);

namespace serial {

ScoreMatrix ApplyPriorScaling(const PosteriorMatrix& posteriors,
                              const PriorVector& prior);
Path BestPath(const PosteriorMatrix& posteriors);
PriorVector EstimatePriors(std::span<const PosteriorMatrix> posteriors,
                           double floor = kDefaultPriorFloor);

}  // namespace serial
}  // namespace ctcdec
