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

// Decoder fixtures and exhaustive oracles shared by the unit tests and the
// acceptance binary.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "ctcdec/alphabet.h"
#include "ctcdec/beam.h"
#include "ctcdec/char_lm.h"
#include "ctcdec/ctc_oracle.h"
#include "ctcdec/io.h"
#include "ctcdec/ngram_lm.h"
#include "ctcdec/posterior.h"

namespace ctcdec::testing {

// One frame per label with `peak` on the label and `blank` on the blank,
// followed by a frame that is `gap_blank` blank. The remaining mass is spread
// evenly over the other labels.
inline PosteriorMatrix PeakyPosteriors(const std::vector<int>& labels, int K,
                                       double peak, double blank, double gap_blank) {
  std::vector<double> probs;
  auto frame = [&](int label, double p_label, double p_blank) {
    const int others = label == 0 ? K - 1 : K - 2;
    const double rest = (1.0 - p_label - (label == 0 ? 0.0 : p_blank)) / others;
    for (int k = 0; k < K; ++k) {
      if (k == label) {
        probs.push_back(p_label);
      } else if (k == 0) {
        probs.push_back(p_blank);
      } else {
        probs.push_back(rest);
      }
    }
  };
  for (int label : labels) {
    frame(label, peak, blank);
    frame(0, gap_blank, gap_blank);
  }
  return PosteriorMatrix::FromProbabilities(static_cast<int>(probs.size()) / K, K, probs);
}

inline std::vector<int> LabelsOf(const Alphabet& alphabet, const std::string& text) {
  std::vector<int> labels;
  for (char c : text) {
    labels.push_back(alphabet.Index(c == ' ' ? std::string(Alphabet::kSpaceSymbol)
                                             : std::string(1, c)));
  }
  return labels;
}

// An acoustic model without spaces paired with a character LM that knows
// them. Every fixture emits at most six characters.
struct SpaceFixture {
  std::string name;
  Alphabet alphabet;
  PosteriorMatrix posteriors;
  std::vector<std::string> lm_corpus;
};

// One frame per entry of `frames`: a label frame puts `peak` on the label and
// `blank` on the blank, a blank frame (0) puts `gap_blank` on the blank. The
// remaining mass is spread evenly over the other labels.
inline PosteriorMatrix FramePosteriors(const std::vector<int>& frames, int K, double peak,
                                       double blank, double gap_blank) {
  std::vector<double> probs;
  for (int label : frames) {
    const double p_label = label == 0 ? gap_blank : peak;
    const double p_blank = label == 0 ? gap_blank : blank;
    const int others = label == 0 ? K - 1 : K - 2;
    const double rest = (1.0 - p_label - (label == 0 ? 0.0 : p_blank)) / others;
    for (int k = 0; k < K; ++k) {
      probs.push_back(k == label ? p_label : k == 0 ? p_blank : rest);
    }
  }
  return PosteriorMatrix::FromProbabilities(static_cast<int>(frames.size()), K, probs);
}

inline std::vector<SpaceFixture> SpaceFixtures() {
  std::vector<SpaceFixture> out;
  {
    Alphabet a = Alphabet::FromLabels({"h", "e", "s"});
    out.push_back({"hes", a, FramePosteriors({1, 0, 2, 0, 3, 0}, a.size(), 0.7, 0.2, 0.85),
                   {"he s", "he s he", "s he s", "he he", "she s"}});
  }
  {
    Alphabet a = Alphabet::FromLabels({"a", "b", "c"});
    out.push_back({"abca", a, FramePosteriors({1, 2, 0, 3, 1}, a.size(), 0.6, 0.25, 0.8),
                   {"ab ca", "ab c", "a bca", "ca ab", "ab ca ab"}});
  }
  {
    Alphabet a = Alphabet::FromLabels({"i", "t", "s", "o"});
    out.push_back({"itso", a, FramePosteriors({1, 2, 0, 3, 4, 0}, a.size(), 0.55, 0.3, 0.75),
                   {"its o", "it so", "it is so", "so it is", "its so"}});
  }
  return out;
}

struct ScoredPrefix {
  Transcription prefix;
  double score;
};

// Scores every reachable transcription (and, with space insertion, every
// placement of single spaces between its characters) the way the beam
// decoder defines the score, then ranks them. No search is involved.
inline std::vector<ScoredPrefix> ExhaustivePrefixScores(const PosteriorMatrix& post,
                                                        const Alphabet& alphabet,
                                                        CharLmSession& lm,
                                                        const BeamConfig& config) {
  Alphabet out_alphabet = config.space_insertion ? alphabet.WithSpace() : alphabet;
  const int space = config.space_insertion ? *out_alphabet.space_index() : -1;
  std::vector<ScoredPrefix> scored;
  for (const auto& [z, acoustic] : EnumerateTranscriptions(post)) {
    const size_t gaps = z.size() > 1 ? z.size() - 1 : 0;
    const size_t placements = space >= 0 ? (size_t{1} << gaps) : 1;
    for (size_t mask = 0; mask < placements; ++mask) {
      Transcription prefix;
      for (size_t i = 0; i < z.size(); ++i) {
        prefix.labels.push_back(z.labels[i]);
        if (i < gaps && (mask >> i & 1)) prefix.labels.push_back(space);
      }
      LmState state = lm.Start();
      double lm_log = 0.0;
      for (int label : prefix.labels) {
        LmStep step = lm.Score(state, SymbolCodepoint(out_alphabet.Symbol(label)));
        lm_log += step.log_prob;
        state = step.next;
      }
      double score = ComposeScore(acoustic, lm_log, static_cast<int>(prefix.size()), config);
      if (score == kLogZero) continue;
      scored.push_back({prefix, score});
    }
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredPrefix& a, const ScoredPrefix& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.prefix < b.prefix;
  });
  return scored;
}

// Empty string when the decoder's ranked hypotheses agree with the oracle
// ranking (allowing reordering only among scores within `tolerance`),
// otherwise a description of the first disagreement.
inline std::string CompareRankings(const BeamResult& decoded,
                                   const std::vector<ScoredPrefix>& oracle, double tolerance) {
  if (decoded.hypotheses.size() != oracle.size()) {
    return "decoder returned " + std::to_string(decoded.hypotheses.size()) +
           " hypotheses, oracle has " + std::to_string(oracle.size());
  }
  for (size_t i = 0; i < oracle.size(); ++i) {
    const auto& hyp = decoded.hypotheses[i];
    if (std::abs(hyp.score - oracle[i].score) > tolerance) {
      return "rank " + std::to_string(i) + ": decoder score " + std::to_string(hyp.score) +
             " vs oracle " + std::to_string(oracle[i].score);
    }
    if (hyp.prefix != oracle[i].prefix) {
      auto it = std::find_if(oracle.begin(), oracle.end(),
                             [&](const ScoredPrefix& s) { return s.prefix == hyp.prefix; });
      if (it == oracle.end() || std::abs(it->score - hyp.score) > tolerance) {
        return "rank " + std::to_string(i) + ": decoder prefix not in oracle ranking";
      }
    }
  }
  return "";
}

// The "he is a police officer" contrast: an acoustic model without a space
// symbol emits the letters cleanly, so best-path decoding glues the words
// together while space insertion with a character LM recovers them.
inline constexpr char kPoliceSentence[] = "he is a police officer";

inline Alphabet LowercaseAlphabet() {
  std::vector<std::string> labels;
  for (char c = 'a'; c <= 'z'; ++c) labels.emplace_back(1, c);
  return Alphabet::FromLabels(labels);
}

inline PosteriorMatrix PolicePosteriors() {
  std::string letters;
  for (char c : std::string(kPoliceSentence)) {
    if (c != ' ') letters += c;
  }
  Alphabet alphabet = LowercaseAlphabet();
  return PeakyPosteriors(LabelsOf(alphabet, letters), alphabet.size(), 0.6, 0.3, 0.8);
}

// Small decoding-graph setup: alphabet {a, b}, lexicon {AB -> a b, A -> a},
// a uniform unigram grammar and a crafted four-frame matrix.
struct WfstToy {
  Alphabet alphabet;
  std::vector<LexiconEntry> lexicon;
  NGramLm lm;
  PosteriorMatrix posteriors;
};

inline constexpr char kUniformUnigramArpa[] = R"(\data\
ngram 1=5

\1-grams:
-99	<s>
-0.60205999	A
-0.60205999	AB
-0.60205999	</s>
-0.60205999	<unk>

\end\
)";

inline WfstToy MakeWfstToy() {
  return {Alphabet::FromLabels({"a", "b"}),
          {{"AB", {"a", "b"}}, {"A", {"a"}}},
          ParseArpa(kUniformUnigramArpa),
          PosteriorMatrix::FromProbabilities(
              4, 3, std::vector<double>{0.3, 0.6, 0.1, 0.5, 0.2, 0.3, 0.3, 0.1, 0.6, 0.7, 0.2, 0.1})};
}

struct WordOracle {
  std::vector<std::string> words;
  double cost = kInfinity;
};

// -ln P(words </s>) under the backoff model, starting from <s>.
inline double GrammarCost(const NGramLm& lm, const std::vector<std::string>& words) {
  std::vector<std::string> history = {std::string(NGramLm::kBos)};
  double log10_total = 0.0;
  for (const auto& w : words) {
    log10_total += lm.Log10Prob(history, w);
    history.push_back(w);
  }
  log10_total += lm.Log10Prob(history, NGramLm::kEos);
  return -log10_total * std::log(10.0);
}

// Best word sequence of at most `max_words` words by enumeration: every
// sequence of lexicon entries is scored with its best CTC alignment on
// `scaled` (already multiplied by the acoustic scale) plus the grammar cost
// and the word penalty. Homophones and alternative spellings compete.
inline WordOracle BruteForceWordDecode(const ScoreMatrix& scaled, const Alphabet& alphabet,
                                       const std::vector<LexiconEntry>& lexicon,
                                       const NGramLm& lm, int max_words,
                                       double word_penalty = 0.0) {
  WordOracle best;
  std::vector<int> chosen;
  std::function<void()> visit = [&] {
    Transcription z;
    std::vector<std::string> words;
    for (int e : chosen) {
      words.push_back(lexicon[e].word);
      for (const auto& unit : lexicon[e].units) z.labels.push_back(alphabet.Index(unit));
    }
    const double acoustic = BestAlignmentScore(z, scaled);
    if (acoustic != kLogZero) {
      const double cost =
          -acoustic + GrammarCost(lm, words) + word_penalty * static_cast<double>(words.size());
      if (cost < best.cost) best = {words, cost};
    }
    if (static_cast<int>(chosen.size()) == max_words) return;
    for (size_t e = 0; e < lexicon.size(); ++e) {
      chosen.push_back(static_cast<int>(e));
      visit();
      chosen.pop_back();
    }
  };
  visit();
  return best;
}

inline ScoreMatrix Scale(const ScoreMatrix& scores, double factor) {
  ScoreMatrix out(scores.num_frames(), scores.num_labels());
  for (int t = 0; t < scores.num_frames(); ++t) {
    for (int k = 0; k < scores.num_labels(); ++k) out(t, k) = factor * scores(t, k);
  }
  return out;
}

}  // namespace ctcdec::testing
