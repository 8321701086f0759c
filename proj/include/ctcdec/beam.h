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

// Prefix beam search over CTC posteriors fused with a character LM.
//
// Each prefix z carries the mass of all paths p with B(p) = z, split into
// paths ending in blank and paths ending in z's last label. A prefix is ranked
// by
//
//   log P(z|X) + lm_weight * log P_LM(z) + |z| * log(insertion_bonus)
//
// where the LM and the bonus are applied once per emitted character and the
// blank contributes neither.

#pragma once

#include <vector>

#include "ctcdec/alphabet.h"
#include "ctcdec/char_lm.h"
#include "ctcdec/common.h"
#include "ctcdec/posterior.h"

namespace ctcdec {

struct BeamConfig {
  int beam_width = 16;
  double insertion_bonus = 2.5;
  double lm_weight = 1.0;
  // Propose prefix + space after every frame, scored by the LM only. Needs an
  // LM that knows the space and an acoustic alphabet without one.
  bool space_insertion = false;
  // Hypotheses scoring below this are dropped (off by default).
  double prune_floor = kLogZero;
  int nbest = 1;

  // Throws kConfig on a width < 1, a non-positive bonus, a negative LM weight
  // or an n-best < 1.
  void Validate() const;
};

struct BeamHypothesis {
  Transcription prefix;  // over BeamResult::alphabet
  double log_blank = kLogZero;
  double log_nonblank = kLogZero;
  double lm_log = 0.0;  // unweighted natural-log LM probability of the prefix
  int emissions = 0;    // LM-scored characters, including inserted spaces
  LmState lm_state = 0;
  double score = kLogZero;

  double acoustic() const { return LogAdd(log_blank, log_nonblank); }
};

struct BeamResult {
  // The acoustic alphabet, extended with "<sp>" when spaces are inserted.
  Alphabet alphabet;
  // Best first; ties broken by lexicographic prefix order.
  std::vector<BeamHypothesis> hypotheses;
};

// Recomputes a hypothesis score from its stored parts.
double ComposeScore(double acoustic, double lm_log, int emissions,
                    const BeamConfig& config);

BeamResult BeamDecode(const PosteriorMatrix& posteriors,
                      const Alphabet& alphabet, CharLmSession& lm,
                      const BeamConfig& config);

// Convenience wrapper that opens (and closes) its own session.
BeamResult BeamDecode(const PosteriorMatrix& posteriors,
                      const Alphabet& alphabet, const CharLm& lm,
                      const BeamConfig& config);

}  // namespace ctcdec
