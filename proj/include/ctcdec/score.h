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

// Word error rate scoring, OOV analysis and system comparison reports.

#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ctcdec {

enum class EditOp { kCorrect, kSubstitution, kDeletion, kInsertion };

struct AlignedPair {
  EditOp op;
  std::string ref;  // empty for insertions
  std::string hyp;  // empty for deletions
  bool operator==(const AlignedPair&) const = default;
};

struct AlignmentReport {
  int ref_tokens = 0;  // N
  int correct = 0;
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;
  std::vector<AlignedPair> pairs;

  int errors() const { return substitutions + deletions + insertions; }
  // Rates are over max(N, 1), so an empty reference yields the raw count.
  double wer() const { return Rate(errors()); }
  double substitution_rate() const { return Rate(substitutions); }
  double deletion_rate() const { return Rate(deletions); }
  double insertion_rate() const { return Rate(insertions); }

  // Adds the counts of `other`; aligned pairs are appended.
  void Accumulate(const AlignmentReport& other);

 private:
  double Rate(int count) const {
    return static_cast<double>(count) / static_cast<double>(std::max(ref_tokens, 1));
  }
};

// Unit-cost minimum edit distance alignment. Among equal-cost alignments the
// trace back from the end prefers a match or substitution, then a deletion,
// then an insertion.
AlignmentReport Align(const std::vector<std::string>& ref,
                      const std::vector<std::string>& hyp);

// Scoring normalization: split on whitespace and lowercase ASCII letters.
std::vector<std::string> NormalizeTokens(std::string_view text);

struct OovReport {
  int count = 0;
  int total = 0;
  double rate = 0.0;  // count / total, 0 for an empty hypothesis
  std::vector<std::string> tokens;  // in hypothesis order, with repeats
};

// Tokens of `hyp` absent from `vocabulary`. With `lowercase`, tokens are
// lowercased first (for case-convention output).
OovReport OovAnalysis(const std::vector<std::string>& hyp,
                      const std::set<std::string>& vocabulary,
                      bool lowercase = false);

struct UtteranceScore {
  std::string id;
  AlignmentReport report;
};

struct SystemScore {
  std::string name;
  std::string subset = "all";
  int utterances = 0;
  AlignmentReport totals;
  std::vector<UtteranceScore> per_utterance;
  std::optional<OovReport> oov;
};

using Transcripts = std::vector<std::pair<std::string, std::string>>;

// Scores `hyp` against `ref` utterance by utterance, in reference order. A
// reference utterance with no hypothesis scores as an empty hypothesis; a
// hypothesis id absent from the reference throws kInvalidInput. The OOV
// analysis runs only when `vocabulary` is given.
SystemScore ScoreSystem(std::string name, const Transcripts& ref,
                        const Transcripts& hyp,
                        const std::set<std::string>* vocabulary = nullptr);

struct CompareReport {
  std::vector<SystemScore> systems;
  // Insertion bonus b and character LM entropy, reported side by side so the
  // bonus can be read in bits per character.
  std::optional<double> insertion_bonus;
  std::optional<double> lm_bpc;
};

std::string FormatTable(const CompareReport& report);
std::string FormatJson(const CompareReport& report);
// One line per utterance: id, N, S, D, I, WER.
std::string FormatPerUtterance(const SystemScore& system);

}  // namespace ctcdec
