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

// Weighted finite-state transducers for CTC decoding.
//
// The search graph is T o L o G:
//   T (token)    maps frame labels to characters by squashing,
//   L (lexicon)  maps character (or phone) sequences to words,
//   G (grammar)  weights word sequences with a backoff n-gram model.
// Weights are negative natural-log scores in the tropical semiring. Label 0 is
// epsilon on both tapes.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctcdec/alphabet.h"
#include "ctcdec/common.h"
#include "ctcdec/io.h"
#include "ctcdec/ngram_lm.h"
#include "ctcdec/posterior.h"

namespace ctcdec {

inline constexpr int kEpsilon = 0;
inline constexpr std::string_view kEpsilonSymbol = "<eps>";

// (min, +) over costs.
struct TropicalWeight {
  double value = kInfinity;

  static TropicalWeight Zero() { return {kInfinity}; }
  static TropicalWeight One() { return {0.0}; }
  static TropicalWeight Plus(TropicalWeight a, TropicalWeight b) {
    return {std::min(a.value, b.value)};
  }
  static TropicalWeight Times(TropicalWeight a, TropicalWeight b) {
    if (a.value == kInfinity || b.value == kInfinity) return Zero();
    return {a.value + b.value};
  }
  bool operator==(const TropicalWeight&) const = default;
};

// (-log(e^-a + e^-b), +) over costs.
struct LogWeight {
  double value = kInfinity;

  static LogWeight Zero() { return {kInfinity}; }
  static LogWeight One() { return {0.0}; }
  static LogWeight Plus(LogWeight a, LogWeight b) {
    return {-LogAdd(-a.value, -b.value)};
  }
  static LogWeight Times(LogWeight a, LogWeight b) {
    if (a.value == kInfinity || b.value == kInfinity) return Zero();
    return {a.value + b.value};
  }
  bool operator==(const LogWeight&) const = default;
};

// Symbol 0 is always "<eps>".
class SymbolTable {
 public:
  SymbolTable() : symbols_{std::string(kEpsilonSymbol)} {}
  explicit SymbolTable(const std::vector<std::string>& symbols);

  int Add(std::string_view symbol);
  std::optional<int> Find(std::string_view symbol) const;
  const std::string& Symbol(int id) const { return symbols_.at(id); }
  int size() const { return static_cast<int>(symbols_.size()); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  bool operator==(const SymbolTable& other) const {
    return symbols_ == other.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
};

struct WfstArc {
  int ilabel;
  int olabel;
  double weight;
  int next;
  bool operator==(const WfstArc&) const = default;
};

class Wfst {
 public:
  Wfst() = default;
  Wfst(SymbolTable input, SymbolTable output)
      : input_(std::move(input)), output_(std::move(output)) {}

  int AddState();
  void SetStart(int state);
  void SetFinal(int state, double weight);
  void AddArc(int state, WfstArc arc);

  int start() const { return start_; }
  int num_states() const { return static_cast<int>(finals_.size()); }
  size_t num_arcs() const;
  // kInfinity for non-final states.
  double Final(int state) const { return finals_.at(state); }
  const std::vector<WfstArc>& Arcs(int state) const { return arcs_.at(state); }

  const SymbolTable& input_symbols() const { return input_; }
  const SymbolTable& output_symbols() const { return output_; }

  // Throws kBuild if the start state, an arc endpoint or a label is invalid.
  void Validate() const;

  bool operator==(const Wfst&) const = default;

 private:
  SymbolTable input_;
  SymbolTable output_;
  int start_ = -1;
  std::vector<double> finals_;
  std::vector<std::vector<WfstArc>> arcs_;
};

// Input symbols are "<eps>" followed by the alphabet (label k has id k + 1);
// output symbols are "<eps>" followed by the alphabet without the blank (label
// k has id k). State 0 follows a blank; state k follows label k.
Wfst BuildTokenFst(const Alphabet& alphabet);

// The word table used by lexicon and grammar: "<eps>" then the lexicon words
// in sorted order.
SymbolTable WordSymbols(const std::vector<LexiconEntry>& lexicon);

// One chain per entry leaving and re-entering the start state; the word is
// emitted on the first arc. If the alphabet has a space, an optional "<sp>"
// loop sits on the start state so spaces between words are absorbed.
Wfst BuildLexiconFst(const Alphabet& alphabet,
                     const std::vector<LexiconEntry>& lexicon);

// Backoff acceptor over `words`: one state per history, an arc per explicit
// n-gram and an epsilon arc to the shorter history weighted by the backoff.
// Final weights are the end-of-sentence costs. Words the model does not know
// use its <unk> entries. Starts in the <s> history.
Wfst BuildGrammarFst(const NGramLm& lm, const SymbolTable& words);

// Composition with the three-state epsilon filter, followed by Trim().
// Throws kBuild if a's output table differs from b's input table.
Wfst Compose(const Wfst& a, const Wfst& b);

// Keeps states that are reachable from the start and reach a final state.
// Surviving states keep their relative order.
Wfst Trim(const Wfst& fst);

// Trim(Compose(Compose(token, lexicon), grammar)).
Wfst BuildSearchGraph(const Alphabet& alphabet,
                      const std::vector<LexiconEntry>& lexicon,
                      const NGramLm& lm);

// Every output string `fst` can produce while consuming exactly `input`,
// with its lowest cost. Epsilon-input runs longer than num_states() arcs are
// not followed. For tests and small graphs only.
std::map<std::vector<int>, double> Transductions(const Wfst& fst,
                                                 std::span<const int> input);

struct WfstDecodeConfig {
  // Maximum active states per frame; 0 keeps all of them.
  int beam = 256;
  double acoustic_scale = 1.0;
  // Added to the cost of every emitted word.
  double word_penalty = 0.0;

  void Validate() const;
};

enum class WfstDecodeStatus { kOk, kNoSurvivor };

struct WfstDecodeResult {
  WfstDecodeStatus status = WfstDecodeStatus::kOk;
  std::vector<int> word_ids;
  std::vector<std::string> words;
  double cost = kInfinity;
};

// Time-synchronous Viterbi search. Consuming label k at frame t costs
// -acoustic_scale * (log P(k|X_t) - log P(k)) plus the arc weight.
WfstDecodeResult WfstDecode(const PosteriorMatrix& posteriors,
                            const PriorVector& prior, const Wfst& graph,
                            const WfstDecodeConfig& config);

// Same search over precomputed scaled scores.
WfstDecodeResult WfstDecode(const ScoreMatrix& scores, const Wfst& graph,
                            const WfstDecodeConfig& config);

// Binary layout, little-endian:
//   "CTCG", u32 version,
//   input table, output table: u32 count, then per symbol u32 length + bytes,
//   u32 num_states, u32 start, num_states x f64 final weight,
//   u32 num_arcs, then per arc (grouped by source state)
//     u32 source, u32 ilabel, u32 olabel, u32 next, f64 weight.
inline constexpr char kGraphMagic[4] = {'C', 'T', 'C', 'G'};
inline constexpr uint32_t kGraphVersion = 1;

std::string SerializeWfst(const Wfst& fst);
Wfst ParseWfst(std::string_view bytes);
Wfst ReadWfstFile(const std::filesystem::path& path);
void WriteWfstFile(const std::filesystem::path& path, const Wfst& fst);

}  // namespace ctcdec
