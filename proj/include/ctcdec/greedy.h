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

#include <string>
#include <vector>

#include "ctcdec/alphabet.h"
#include "ctcdec/posterior.h"

namespace ctcdec {

// Best path (per-frame argmax, lowest index wins ties) squashed to a
// transcription.
Transcription GreedyDecode(const PosteriorMatrix& posteriors,
                           const Alphabet& alphabet, int num_threads = 1);

// Splits a transcription into words under the alphabet's word convention.
// The case convention lowercases ASCII letters. Throws kUnsupported when the
// alphabet declares no convention.
std::vector<std::string> RenderWords(const Transcription& z,
                                     const Alphabet& alphabet);

// Words joined by single spaces, or the raw symbol concatenation ("<sp>" shown
// as a space) when the alphabet has no word convention.
std::string RenderText(const Transcription& z, const Alphabet& alphabet);

}  // namespace ctcdec
