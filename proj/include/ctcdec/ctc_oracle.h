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

// Exact CTC quantities. All results are natural-log probabilities; -inf is a
// valid result for impossible paths and transcriptions.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ctcdec/posterior.h"

namespace ctcdec {

inline constexpr uint64_t kDefaultEnumerationCap = 10'000'000;

// z' = (blank, z1, blank, z2, ..., zU, blank), length 2U+1.
std::vector<int> AugmentWithBlanks(const Transcription& z);

// log P(p|X) = sum_t log y^t_{p_t}. Throws kInvalidInput on length mismatch or
// bad labels.
double PathLogProbability(const Path& path, const PosteriorMatrix& posteriors);

// log P(z|X) by the forward recursion over the blank-augmented sequence.
// Returns -inf when z cannot be produced in T frames.
double SequenceLogProbability(const Transcription& z,
                              const PosteriorMatrix& posteriors);

// Viterbi variant of the forward recursion: the best single path whose squash
// is z, scored on an arbitrary (e.g. prior-scaled) score matrix.
double BestAlignmentScore(const Transcription& z, const ScoreMatrix& scores);

// Number of paths K^T, saturating at UINT64_MAX.
uint64_t PathCount(int num_frames, int num_labels);

// Sums P(p|X) over every one of the K^T paths whose squash is z. Throws
// kCapacity when K^T exceeds `cap`.
double BruteForceSequenceLogProbability(
    const Transcription& z, const PosteriorMatrix& posteriors,
    uint64_t cap = kDefaultEnumerationCap);

// log P(z|X) for every transcription with non-zero mass, by enumeration.
std::map<Transcription, double> EnumerateTranscriptions(
    const PosteriorMatrix& posteriors, uint64_t cap = kDefaultEnumerationCap);

}  // namespace ctcdec
