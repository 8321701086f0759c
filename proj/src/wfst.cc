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

#include "ctcdec/wfst.h"

#include <bit>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <unordered_set>

#include "ctcdec/kernels.h"

namespace ctcdec {
namespace {

constexpr double kLn10 = std::numbers::ln10;

// ---------------------------------------------------------------------------
// Binary helpers.

void PutU32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutF64(std::string& out, double v) {
  uint64_t bits = std::bit_cast<uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

void PutTable(std::string& out, const SymbolTable& table) {
  PutU32(out, static_cast<uint32_t>(table.size()));
  for (const auto& s : table.symbols()) {
    PutU32(out, static_cast<uint32_t>(s.size()));
    out += s;
  }
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  size_t offset() const { return offset_; }
  bool done() const { return offset_ == bytes_.size(); }

  uint32_t U32(const char* what) {
    Need(4, what);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<uint32_t>(static_cast<unsigned char>(bytes_[offset_ + i]))
           << (8 * i);
    }
    offset_ += 4;
    return v;
  }

  double F64(const char* what) {
    Need(8, what);
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
      bits |= static_cast<uint64_t>(static_cast<unsigned char>(bytes_[offset_ + i]))
              << (8 * i);
    }
    offset_ += 8;
    return std::bit_cast<double>(bits);
  }

  std::string_view Bytes(size_t n, const char* what) {
    Need(n, what);
    auto out = bytes_.substr(offset_, n);
    offset_ += n;
    return out;
  }

  [[noreturn]] void Fail(ParseErrorCode code, const std::string& message,
                         size_t at) const {
    throw ParseError(code, "graph file: " + message + " at byte offset " +
                               std::to_string(at));
  }

 private:
  void Need(size_t n, const char* what) const {
    if (bytes_.size() - offset_ < n) {
      Fail(ParseErrorCode::kTruncated, std::string("truncated ") + what, offset_);
    }
  }

  std::string_view bytes_;
  size_t offset_ = 0;
};

SymbolTable ReadTable(Reader& in, const char* what) {
  const size_t at = in.offset();
  uint32_t count = in.U32(what);
  std::vector<std::string> symbols;
  for (uint32_t i = 0; i < count; ++i) {
    uint32_t len = in.U32(what);
    symbols.emplace_back(in.Bytes(len, what));
  }
  try {
    return SymbolTable(symbols);
  } catch (const Error& e) {
    in.Fail(ParseErrorCode::kBadValue, std::string(what) + ": " + e.what(), at);
  }
}

// ---------------------------------------------------------------------------
// Decoding helpers.

struct Backpointer {
  int prev;
  int word;
};

struct Token {
  double cost = kInfinity;
  int bp = -1;
};

// Dense per-state token storage with a list of the states in use.
class TokenSet {
 public:
  explicit TokenSet(int num_states) : tokens_(num_states) {}

  const Token& operator[](int state) const { return tokens_[state]; }
  const std::vector<int>& active() const { return active_; }

  // Keeps the cheaper token; on a tie the one already present stays.
  bool Relax(int state, double cost, int bp) {
    Token& t = tokens_[state];
    if (t.cost == kInfinity) {
      if (cost == kInfinity) return false;
      active_.push_back(state);
    } else if (!(cost < t.cost)) {
      return false;
    }
    t.cost = cost;
    t.bp = bp;
    return true;
  }

  void Clear() {
    for (int s : active_) tokens_[s] = Token{};
    active_.clear();
  }

  // Sorts the active states and keeps the `beam` cheapest (0 keeps all).
  void Prune(int beam) {
    std::sort(active_.begin(), active_.end());
    if (beam <= 0 || active_.size() <= static_cast<size_t>(beam)) return;
    std::vector<int> order = active_;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return tokens_[a].cost < tokens_[b].cost;
    });
    for (size_t i = beam; i < order.size(); ++i) tokens_[order[i]] = Token{};
    order.resize(beam);
    std::sort(order.begin(), order.end());
    active_ = std::move(order);
  }

 private:
  std::vector<Token> tokens_;
  std::vector<int> active_;
};

class Search {
 public:
  Search(const Wfst& graph, const WfstDecodeConfig& config)
      : graph_(graph), config_(config) {}

  int Emit(int bp, int olabel) {
    if (olabel == kEpsilon) return bp;
    arena_.push_back({bp, olabel});
    return static_cast<int>(arena_.size()) - 1;
  }

  double ArcCost(const WfstArc& arc) const {
    return arc.weight + (arc.olabel != kEpsilon ? config_.word_penalty : 0.0);
  }

  // Follows epsilon-input arcs until no token improves.
  void Closure(TokenSet& tokens) {
    std::deque<int> queue(tokens.active().begin(), tokens.active().end());
    std::vector<char> queued(graph_.num_states(), 0);
    for (int s : queue) queued[s] = 1;
    while (!queue.empty()) {
      int s = queue.front();
      queue.pop_front();
      queued[s] = 0;
      const Token from = tokens[s];
      for (const WfstArc& arc : graph_.Arcs(s)) {
        if (arc.ilabel != kEpsilon) continue;
        double cost = from.cost + ArcCost(arc);
        if (!(cost < tokens[arc.next].cost)) continue;
        tokens.Relax(arc.next, cost, Emit(from.bp, arc.olabel));
        if (!queued[arc.next]) {
          queued[arc.next] = 1;
          queue.push_back(arc.next);
        }
      }
    }
  }

  std::vector<int> Words(int bp) const {
    std::vector<int> words;
    for (; bp >= 0; bp = arena_[bp].prev) words.push_back(arena_[bp].word);
    std::reverse(words.begin(), words.end());
    return words;
  }

 private:
  const Wfst& graph_;
  const WfstDecodeConfig& config_;
  std::vector<Backpointer> arena_;
};

}  // namespace

// ---------------------------------------------------------------------------
// SymbolTable and Wfst.

SymbolTable::SymbolTable(const std::vector<std::string>& symbols) : symbols_() {
  if (symbols.empty() || symbols[0] != kEpsilonSymbol) {
    throw Error(ErrorKind::kInvalidInput, "symbol table must start with <eps>");
  }
  symbols_.push_back(symbols[0]);
  for (size_t i = 1; i < symbols.size(); ++i) {
    if (Find(symbols[i]) || symbols[i] == kEpsilonSymbol) {
      throw Error(ErrorKind::kInvalidInput,
                  "duplicate symbol \"" + symbols[i] + "\" in symbol table");
    }
    Add(symbols[i]);
  }
}

int SymbolTable::Add(std::string_view symbol) {
  if (auto id = Find(symbol)) return *id;
  if (symbol == kEpsilonSymbol) return kEpsilon;
  int id = size();
  symbols_.emplace_back(symbol);
  index_.emplace(symbols_.back(), id);
  return id;
}

std::optional<int> SymbolTable::Find(std::string_view symbol) const {
  if (symbol == kEpsilonSymbol) return kEpsilon;
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Wfst::AddState() {
  finals_.push_back(kInfinity);
  arcs_.emplace_back();
  return num_states() - 1;
}

void Wfst::SetStart(int state) {
  if (state < 0 || state >= num_states()) {
    throw Error(ErrorKind::kBuild, "start state " + std::to_string(state) + " does not exist");
  }
  start_ = state;
}

void Wfst::SetFinal(int state, double weight) { finals_.at(state) = weight; }

void Wfst::AddArc(int state, WfstArc arc) { arcs_.at(state).push_back(arc); }

size_t Wfst::num_arcs() const {
  size_t n = 0;
  for (const auto& arcs : arcs_) n += arcs.size();
  return n;
}

void Wfst::Validate() const {
  if (num_states() > 0 && (start_ < 0 || start_ >= num_states())) {
    throw Error(ErrorKind::kBuild, "start state is not set");
  }
  for (int s = 0; s < num_states(); ++s) {
    if (std::isnan(finals_[s]) || finals_[s] == kLogZero) {
      throw Error(ErrorKind::kBuild, "bad final weight on state " + std::to_string(s));
    }
    for (const WfstArc& arc : arcs_[s]) {
      if (arc.next < 0 || arc.next >= num_states() || arc.ilabel < 0 ||
          arc.ilabel >= input_.size() || arc.olabel < 0 ||
          arc.olabel >= output_.size() || std::isnan(arc.weight)) {
        throw Error(ErrorKind::kBuild, "invalid arc leaving state " + std::to_string(s));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Builders.

Wfst BuildTokenFst(const Alphabet& alphabet) {
  SymbolTable input, output;
  for (int k = 0; k < alphabet.size(); ++k) input.Add(alphabet.Symbol(k));
  for (int k = 1; k < alphabet.size(); ++k) output.Add(alphabet.Symbol(k));
  Wfst fst(input, output);
  const int K = alphabet.size();
  for (int s = 0; s < K; ++s) {
    fst.AddState();
    fst.SetFinal(s, 0.0);
  }
  fst.SetStart(0);
  for (int s = 0; s < K; ++s) {
    fst.AddArc(s, {Alphabet::kBlank + 1, kEpsilon, 0.0, 0});
    for (int k = 1; k < K; ++k) {
      // Staying on the same label without a blank in between is one emission.
      fst.AddArc(s, {k + 1, s == k ? kEpsilon : k, 0.0, k});
    }
  }
  return fst;
}

SymbolTable WordSymbols(const std::vector<LexiconEntry>& lexicon) {
  std::set<std::string> words;
  for (const auto& entry : lexicon) words.insert(entry.word);
  SymbolTable table;
  for (const auto& w : words) table.Add(w);
  return table;
}

Wfst BuildLexiconFst(const Alphabet& alphabet,
                     const std::vector<LexiconEntry>& lexicon) {
  if (lexicon.empty()) throw Error(ErrorKind::kBuild, "lexicon is empty");
  SymbolTable units;
  for (int k = 1; k < alphabet.size(); ++k) units.Add(alphabet.Symbol(k));
  Wfst fst(units, WordSymbols(lexicon));
  const int start = fst.AddState();
  fst.SetStart(start);
  fst.SetFinal(start, 0.0);
  for (const auto& entry : lexicon) {
    if (entry.units.empty()) {
      throw Error(ErrorKind::kBuild, "word \"" + entry.word + "\" has no units");
    }
    const int word = *fst.output_symbols().Find(entry.word);
    int state = start;
    for (size_t i = 0; i < entry.units.size(); ++i) {
      auto unit = units.Find(entry.units[i]);
      if (!unit || *unit == kEpsilon) {
        throw Error(ErrorKind::kBuild, "word \"" + entry.word + "\" uses unit \"" +
                                           entry.units[i] +
                                           "\" which is not in the alphabet");
      }
      const bool last = i + 1 == entry.units.size();
      const int next = last ? start : fst.AddState();
      fst.AddArc(state, {*unit, i == 0 ? word : kEpsilon, 0.0, next});
      state = next;
    }
  }
  if (auto space = alphabet.space_index()) {
    fst.AddArc(start, {*space, kEpsilon, 0.0, start});
  }
  return fst;
}

Wfst BuildGrammarFst(const NGramLm& lm, const SymbolTable& words) {
  if (words.size() <= 1) throw Error(ErrorKind::kBuild, "grammar word list is empty");
  Wfst fst(words, words);

  // LM id -> table ids. Table words the model lacks share its <unk> entries.
  std::vector<std::vector<int>> targets(lm.vocab_size());
  for (int id = 1; id < words.size(); ++id) {
    auto lm_id = lm.Find(words.Symbol(id));
    int target = lm_id ? *lm_id : lm.unk();
    if (target == lm.bos() || target == lm.eos()) continue;
    targets[target].push_back(id);
  }

  std::map<std::vector<int>, int> states;
  auto add_state = [&](const std::vector<int>& history) {
    auto [it, inserted] = states.emplace(history, 0);
    if (inserted) it->second = fst.AddState();
    return it->second;
  };
  add_state({});
  for (int n = 1; n < lm.order(); ++n) {
    for (const auto& [ngram, entry] : lm.SortedEntries(n)) {
      if (ngram.back() != lm.eos()) add_state(ngram);
    }
  }
  // The longest suffix of `ngram` that is a known history.
  auto state_for = [&](std::vector<int> ngram) {
    const size_t max_len = static_cast<size_t>(lm.order() - 1);
    if (ngram.size() > max_len) ngram.erase(ngram.begin(), ngram.end() - max_len);
    while (true) {
      if (auto it = states.find(ngram); it != states.end()) return it->second;
      ngram.erase(ngram.begin());
    }
  };

  auto bos_state = states.find({lm.bos()});
  fst.SetStart(bos_state != states.end() ? bos_state->second : states.at({}));

  size_t word_arcs = 0;
  for (int n = 1; n <= lm.order(); ++n) {
    for (const auto& [ngram, entry] : lm.SortedEntries(n)) {
      const int w = ngram.back();
      if (w == lm.bos() || w == lm.eos() || targets[w].empty()) continue;
      if (entry.log10_prob <= kArpaLogZero) continue;
      auto source = states.find(std::vector<int>(ngram.begin(), ngram.end() - 1));
      if (source == states.end()) continue;  // unreachable history
      const int next = state_for(ngram);
      for (int label : targets[w]) {
        fst.AddArc(source->second, {label, label, -entry.log10_prob * kLn10, next});
        ++word_arcs;
      }
    }
  }
  if (word_arcs == 0) throw Error(ErrorKind::kBuild, "grammar has no word arcs");

  for (const auto& [history, state] : states) {
    const double eos = lm.Log10Prob(history, lm.eos());
    if (eos > kArpaLogZero) fst.SetFinal(state, -eos * kLn10);
    if (history.empty()) continue;
    const auto* entry = lm.FindEntry(history);
    const double bow = entry && entry->log10_backoff ? *entry->log10_backoff : 0.0;
    fst.AddArc(state, {kEpsilon, kEpsilon, -bow * kLn10,
                       state_for(std::vector<int>(history.begin() + 1, history.end()))});
  }
  return fst;
}

// ---------------------------------------------------------------------------
// Composition.

Wfst Compose(const Wfst& a, const Wfst& b) {
  if (!(a.output_symbols() == b.input_symbols())) {
    throw Error(ErrorKind::kBuild,
                "cannot compose: output symbols of the left transducer differ "
                "from input symbols of the right one");
  }
  Wfst out(a.input_symbols(), b.output_symbols());
  if (a.num_states() == 0 || b.num_states() == 0) return out;

  // b's arcs per state sorted by input label for matching.
  std::vector<std::vector<WfstArc>> b_arcs(b.num_states());
  for (int s = 0; s < b.num_states(); ++s) {
    b_arcs[s] = b.Arcs(s);
    std::stable_sort(b_arcs[s].begin(), b_arcs[s].end(),
                     [](const WfstArc& x, const WfstArc& y) { return x.ilabel < y.ilabel; });
  }
  auto matches = [&](int s, int label) {
    return std::equal_range(
        b_arcs[s].begin(), b_arcs[s].end(), WfstArc{label, 0, 0.0, 0},
        [](const WfstArc& x, const WfstArc& y) { return x.ilabel < y.ilabel; });
  };

  struct Triple {
    int a, b, filter;
  };
  const uint64_t nb = static_cast<uint64_t>(b.num_states());
  std::unordered_map<uint64_t, int> ids;
  std::deque<Triple> queue;
  auto state_of = [&](int sa, int sb, int f) {
    uint64_t key = (static_cast<uint64_t>(sa) * nb + static_cast<uint64_t>(sb)) * 3 + f;
    auto [it, inserted] = ids.emplace(key, 0);
    if (inserted) {
      it->second = out.AddState();
      queue.push_back({sa, sb, f});
    }
    return it->second;
  };
  out.SetStart(state_of(a.start(), b.start(), 0));

  for (int id = 0; !queue.empty(); ++id) {
    const Triple t = queue.front();
    queue.pop_front();
    if (a.Final(t.a) != kInfinity && b.Final(t.b) != kInfinity) {
      out.SetFinal(id, a.Final(t.a) + b.Final(t.b));
    }
    for (const WfstArc& x : a.Arcs(t.a)) {
      if (x.olabel == kEpsilon) {
        // a moves alone.
        if (t.filter != 2) {
          out.AddArc(id, {x.ilabel, kEpsilon, x.weight, state_of(x.next, t.b, 1)});
        }
        // Both take an epsilon together.
        if (t.filter == 0) {
          auto [lo, hi] = matches(t.b, kEpsilon);
          for (auto y = lo; y != hi; ++y) {
            out.AddArc(id, {x.ilabel, y->olabel, x.weight + y->weight,
                            state_of(x.next, y->next, 0)});
          }
        }
        continue;
      }
      auto [lo, hi] = matches(t.b, x.olabel);
      for (auto y = lo; y != hi; ++y) {
        out.AddArc(id, {x.ilabel, y->olabel, x.weight + y->weight,
                        state_of(x.next, y->next, 0)});
      }
    }
    // b moves alone.
    if (t.filter != 1) {
      auto [lo, hi] = matches(t.b, kEpsilon);
      for (auto y = lo; y != hi; ++y) {
        out.AddArc(id, {kEpsilon, y->olabel, y->weight, state_of(t.a, y->next, 2)});
      }
    }
  }
  return Trim(out);
}

Wfst Trim(const Wfst& fst) {
  const int n = fst.num_states();
  Wfst out(fst.input_symbols(), fst.output_symbols());
  if (n == 0 || fst.start() < 0) return out;

  std::vector<char> forward(n, 0), backward(n, 0);
  std::vector<std::vector<int>> reverse(n);
  std::vector<int> stack = {fst.start()};
  forward[fst.start()] = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (const WfstArc& arc : fst.Arcs(s)) {
      reverse[arc.next].push_back(s);
      if (!forward[arc.next]) {
        forward[arc.next] = 1;
        stack.push_back(arc.next);
      }
    }
  }
  for (int s = 0; s < n; ++s) {
    if (forward[s] && fst.Final(s) != kInfinity) {
      backward[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int p : reverse[s]) {
      if (!backward[p]) {
        backward[p] = 1;
        stack.push_back(p);
      }
    }
  }
  std::vector<int> remap(n, -1);
  for (int s = 0; s < n; ++s) {
    if (forward[s] && backward[s]) remap[s] = out.AddState();
  }
  if (remap[fst.start()] < 0) return Wfst(fst.input_symbols(), fst.output_symbols());
  out.SetStart(remap[fst.start()]);
  for (int s = 0; s < n; ++s) {
    if (remap[s] < 0) continue;
    out.SetFinal(remap[s], fst.Final(s));
    for (const WfstArc& arc : fst.Arcs(s)) {
      if (remap[arc.next] < 0) continue;
      out.AddArc(remap[s], {arc.ilabel, arc.olabel, arc.weight, remap[arc.next]});
    }
  }
  return out;
}

Wfst BuildSearchGraph(const Alphabet& alphabet,
                      const std::vector<LexiconEntry>& lexicon,
                      const NGramLm& lm) {
  Wfst token = BuildTokenFst(alphabet);
  Wfst lexicon_fst = BuildLexiconFst(alphabet, lexicon);
  Wfst grammar = BuildGrammarFst(lm, lexicon_fst.output_symbols());
  Wfst graph = Compose(Compose(token, lexicon_fst), grammar);
  if (graph.num_states() == 0) {
    throw Error(ErrorKind::kBuild, "search graph is empty after trimming");
  }
  return graph;
}

std::map<std::vector<int>, double> Transductions(const Wfst& fst,
                                                 std::span<const int> input) {
  std::map<std::vector<int>, double> out;
  if (fst.num_states() == 0) return out;
  std::vector<int> tape;
  const int max_eps = fst.num_states();
  auto visit = [&](auto&& self, int state, size_t pos, double cost, int eps_run) -> void {
    if (pos == input.size() && fst.Final(state) != kInfinity) {
      double total = cost + fst.Final(state);
      auto [it, inserted] = out.emplace(tape, total);
      if (!inserted) it->second = std::min(it->second, total);
    }
    for (const WfstArc& arc : fst.Arcs(state)) {
      const bool eps = arc.ilabel == kEpsilon;
      if (eps ? eps_run >= max_eps : pos == input.size() || arc.ilabel != input[pos]) {
        continue;
      }
      if (arc.olabel != kEpsilon) tape.push_back(arc.olabel);
      self(self, arc.next, eps ? pos : pos + 1, cost + arc.weight, eps ? eps_run + 1 : 0);
      if (arc.olabel != kEpsilon) tape.pop_back();
    }
  };
  visit(visit, fst.start(), 0, 0.0, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Decoding.

void WfstDecodeConfig::Validate() const {
  if (beam < 0) throw Error(ErrorKind::kConfig, "beam must be >= 0");
  if (!(acoustic_scale > 0.0) || !std::isfinite(acoustic_scale)) {
    throw Error(ErrorKind::kConfig, "acoustic scale must be positive");
  }
  if (!std::isfinite(word_penalty)) {
    throw Error(ErrorKind::kConfig, "word penalty must be finite");
  }
}

WfstDecodeResult WfstDecode(const PosteriorMatrix& posteriors,
                            const PriorVector& prior, const Wfst& graph,
                            const WfstDecodeConfig& config) {
  return WfstDecode(ApplyPriorScaling(posteriors, prior, 1), graph, config);
}

WfstDecodeResult WfstDecode(const ScoreMatrix& scores, const Wfst& graph,
                            const WfstDecodeConfig& config) {
  config.Validate();
  if (graph.input_symbols().size() != scores.num_labels() + 1) {
    throw Error(ErrorKind::kInvalidInput,
                "graph has " + std::to_string(graph.input_symbols().size() - 1) +
                    " input labels, scores have " + std::to_string(scores.num_labels()));
  }
  WfstDecodeResult result;
  result.status = WfstDecodeStatus::kNoSurvivor;
  if (graph.num_states() == 0) return result;

  Search search(graph, config);
  TokenSet current(graph.num_states()), next(graph.num_states());
  current.Relax(graph.start(), 0.0, -1);
  search.Closure(current);

  for (int t = 0; t < scores.num_frames() && !current.active().empty(); ++t) {
    auto row = scores.Row(t);
    for (int s : current.active()) {
      const Token from = current[s];
      for (const WfstArc& arc : graph.Arcs(s)) {
        if (arc.ilabel == kEpsilon) continue;
        const double score = row[arc.ilabel - 1];
        if (score == kLogZero) continue;
        double cost = from.cost - config.acoustic_scale * score + search.ArcCost(arc);
        if (cost < next[arc.next].cost) {
          next.Relax(arc.next, cost, search.Emit(from.bp, arc.olabel));
        }
      }
    }
    // Histogram pruning applies to tokens reached by emitting arcs; the
    // survivors are then expanded along epsilon arcs (grammar backoff).
    next.Prune(config.beam);
    search.Closure(next);
    std::swap(current, next);
    next.Clear();
  }

  int best = -1;
  double best_cost = kInfinity;
  for (int s : current.active()) {
    double cost = current[s].cost + graph.Final(s);
    if (cost < best_cost) {
      best_cost = cost;
      best = s;
    }
  }
  if (best < 0) return result;
  result.status = WfstDecodeStatus::kOk;
  result.cost = best_cost;
  result.word_ids = search.Words(current[best].bp);
  for (int id : result.word_ids) {
    result.words.push_back(graph.output_symbols().Symbol(id));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Serialization.

std::string SerializeWfst(const Wfst& fst) {
  std::string out(kGraphMagic, 4);
  PutU32(out, kGraphVersion);
  PutTable(out, fst.input_symbols());
  PutTable(out, fst.output_symbols());
  PutU32(out, static_cast<uint32_t>(fst.num_states()));
  PutU32(out, static_cast<uint32_t>(fst.start()));
  for (int s = 0; s < fst.num_states(); ++s) PutF64(out, fst.Final(s));
  PutU32(out, static_cast<uint32_t>(fst.num_arcs()));
  for (int s = 0; s < fst.num_states(); ++s) {
    for (const WfstArc& arc : fst.Arcs(s)) {
      PutU32(out, static_cast<uint32_t>(s));
      PutU32(out, static_cast<uint32_t>(arc.ilabel));
      PutU32(out, static_cast<uint32_t>(arc.olabel));
      PutU32(out, static_cast<uint32_t>(arc.next));
      PutF64(out, arc.weight);
    }
  }
  return out;
}

Wfst ParseWfst(std::string_view bytes) {
  Reader in(bytes);
  if (bytes.size() < 4 || bytes.substr(0, 4) != std::string_view(kGraphMagic, 4)) {
    in.Fail(ParseErrorCode::kBadMagic, "expected \"CTCG\"", 0);
  }
  in.Bytes(4, "magic");
  uint32_t version = in.U32("version");
  if (version != kGraphVersion) {
    in.Fail(ParseErrorCode::kBadVersion, "version " + std::to_string(version), 4);
  }
  SymbolTable input = ReadTable(in, "input symbol table");
  SymbolTable output = ReadTable(in, "output symbol table");
  Wfst fst(std::move(input), std::move(output));

  const size_t states_at = in.offset();
  uint32_t num_states = in.U32("state count");
  uint32_t start = in.U32("start state");
  if (num_states > (bytes.size() - in.offset()) / 8) {
    in.Fail(ParseErrorCode::kTruncated,
            "state count " + std::to_string(num_states) + " exceeds the file", states_at);
  }
  for (uint32_t s = 0; s < num_states; ++s) {
    const size_t at = in.offset();
    fst.AddState();
    double w = in.F64("final weights");
    if (std::isnan(w) || w == kLogZero) {
      in.Fail(ParseErrorCode::kBadValue, "bad final weight", at);
    }
    fst.SetFinal(static_cast<int>(s), w);
  }
  if (num_states > 0) {
    if (start >= num_states) {
      in.Fail(ParseErrorCode::kBadValue, "start state out of range", states_at + 4);
    }
    fst.SetStart(static_cast<int>(start));
  }
  uint32_t num_arcs = in.U32("arc count");
  for (uint32_t i = 0; i < num_arcs; ++i) {
    const size_t at = in.offset();
    uint32_t src = in.U32("arcs");
    uint32_t ilabel = in.U32("arcs");
    uint32_t olabel = in.U32("arcs");
    uint32_t next = in.U32("arcs");
    double weight = in.F64("arcs");
    if (src >= num_states || next >= num_states ||
        ilabel >= static_cast<uint32_t>(fst.input_symbols().size()) ||
        olabel >= static_cast<uint32_t>(fst.output_symbols().size()) ||
        std::isnan(weight)) {
      in.Fail(ParseErrorCode::kBadValue, "invalid arc " + std::to_string(i), at);
    }
    fst.AddArc(static_cast<int>(src), {static_cast<int>(ilabel), static_cast<int>(olabel),
                                       weight, static_cast<int>(next)});
  }
  if (!in.done()) in.Fail(ParseErrorCode::kTrailingData, "unexpected data", in.offset());
  return fst;
}

Wfst ReadWfstFile(const std::filesystem::path& path) {
  return ParseWfst(ReadFileToString(path));
}

void WriteWfstFile(const std::filesystem::path& path, const Wfst& fst) {
  WriteStringToFile(path, SerializeWfst(fst));
}

}  // namespace ctcdec
