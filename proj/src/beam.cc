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

#include "ctcdec/beam.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace ctcdec {
namespace {

constexpr int kRoot = 0;

struct Node {
  int parent = -1;
  int label = -1;
  // Last label with an acoustic footprint; inserted spaces are skipped so a
  // following repeat still needs a blank in between.
  int last_acoustic = -1;
  LmState lm_state = 0;
  double lm_log = 0.0;
  int emissions = 0;
};

// Every prefix ever proposed, with its LM score computed once on creation.
class PrefixTree {
 public:
  PrefixTree(CharLmSession& lm, std::vector<char32_t> label_chars,
             int space_label)
      : lm_(lm), label_chars_(std::move(label_chars)), space_label_(space_label) {
    Node root;
    root.lm_state = lm_.Start();
    nodes_.push_back(root);
  }

  const Node& node(int id) const { return nodes_[id]; }

  int Extend(int parent, int label) {
    uint64_t key = (static_cast<uint64_t>(parent) << 32) | static_cast<uint32_t>(label);
    auto it = children_.find(key);
    if (it != children_.end()) return it->second;
    const Node& p = nodes_[parent];
    LmStep step = lm_.Score(p.lm_state, label_chars_[label]);
    Node child;
    child.parent = parent;
    child.label = label;
    child.last_acoustic = label == space_label_ ? p.last_acoustic : label;
    child.lm_state = step.next;
    child.lm_log = p.lm_log + step.log_prob;
    child.emissions = p.emissions + 1;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(child);
    children_.emplace(key, id);
    return id;
  }

  std::vector<int> Labels(int id) const {
    std::vector<int> labels;
    for (; id != kRoot; id = nodes_[id].parent) labels.push_back(nodes_[id].label);
    std::reverse(labels.begin(), labels.end());
    return labels;
  }

 private:
  CharLmSession& lm_;
  std::vector<char32_t> label_chars_;
  int space_label_;
  std::vector<Node> nodes_;
  std::unordered_map<uint64_t, int> children_;
};

struct Mass {
  double blank = kLogZero;
  double nonblank = kLogZero;
};

struct Entry {
  int node;
  Mass mass;
  double score = kLogZero;
};

// Frame-local accumulator that merges mass for equal prefixes.
class Accumulator {
 public:
  Mass& operator[](int node) {
    auto [it, inserted] = slot_.emplace(node, entries_.size());
    if (inserted) entries_.push_back({node, Mass{}});
    return entries_[it->second].mass;
  }
  std::vector<Entry>& entries() { return entries_; }

 private:
  std::unordered_map<int, size_t> slot_;
  std::vector<Entry> entries_;
};

}  // namespace

void BeamConfig::Validate() const {
  if (beam_width < 1) throw Error(ErrorKind::kConfig, "beam width must be >= 1");
  if (!(insertion_bonus > 0.0)) {
    throw Error(ErrorKind::kConfig, "insertion bonus must be positive");
  }
  if (!(lm_weight >= 0.0)) {
    throw Error(ErrorKind::kConfig, "LM weight must be non-negative");
  }
  if (nbest < 1) throw Error(ErrorKind::kConfig, "n-best must be >= 1");
}

double ComposeScore(double acoustic, double lm_log, int emissions,
                    const BeamConfig& config) {
  if (acoustic == kLogZero) return kLogZero;
  double score = acoustic + emissions * std::log(config.insertion_bonus);
  // A zero LM weight ignores the LM entirely, even where it assigns zero mass.
  if (config.lm_weight != 0.0) score += config.lm_weight * lm_log;
  return score;
}

BeamResult BeamDecode(const PosteriorMatrix& posteriors,
                      const Alphabet& alphabet, CharLmSession& lm,
                      const BeamConfig& config) {
  config.Validate();
  const int K = alphabet.size();
  if (posteriors.num_labels() != K) {
    throw Error(ErrorKind::kInvalidInput,
                "posteriors have " + std::to_string(posteriors.num_labels()) +
                    " labels, alphabet has " + std::to_string(K));
  }

  BeamResult result;
  result.alphabet = alphabet;
  int space_label = -1;
  if (config.space_insertion) {
    if (alphabet.space_index()) {
      throw Error(ErrorKind::kConfig,
                  "space insertion needs an acoustic alphabet without <sp>");
    }
    if (!lm.HasSpace()) {
      throw Error(ErrorKind::kConfig,
                  "space insertion needs an LM that scores the space symbol");
    }
    result.alphabet = alphabet.WithSpace();
    space_label = *result.alphabet.space_index();
  }
  std::vector<char32_t> label_chars;
  for (const auto& symbol : result.alphabet.symbols()) {
    label_chars.push_back(SymbolCodepoint(symbol));
  }
  PrefixTree tree(lm, std::move(label_chars), space_label);

  auto rank = [&](const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score > b.score;
    return tree.Labels(a.node) < tree.Labels(b.node);
  };

  std::vector<Entry> beam = {{kRoot, {0.0, kLogZero}}};
  const int T = posteriors.num_frames();
  for (int t = 0; t < T; ++t) {
    auto row = posteriors.Row(t);
    Accumulator next;
    for (const Entry& hyp : beam) {
      const double total = LogAdd(hyp.mass.blank, hyp.mass.nonblank);
      if (total == kLogZero) continue;
      const int last = tree.node(hyp.node).last_acoustic;
      {
        Mass& same = next[hyp.node];
        same.blank = LogAdd(same.blank, total + row[Alphabet::kBlank]);
        if (last > 0 && hyp.mass.nonblank != kLogZero) {
          same.nonblank = LogAdd(same.nonblank, hyp.mass.nonblank + row[last]);
        }
      }
      for (int c = 1; c < K; ++c) {
        if (row[c] == kLogZero) continue;
        // A repeated label only starts a new character after a blank.
        const double from = c == last ? hyp.mass.blank : total;
        if (from == kLogZero) continue;
        int child = tree.Extend(hyp.node, c);
        Mass& m = next[child];
        m.nonblank = LogAdd(m.nonblank, from + row[c]);
      }
    }

    // Space-extended copies carry exactly the acoustic mass of their base.
    if (config.space_insertion && t + 1 < T) {
      const size_t count = next.entries().size();
      for (size_t i = 0; i < count; ++i) {
        const Entry base = next.entries()[i];
        if (base.node == kRoot || tree.node(base.node).label == space_label) continue;
        next[tree.Extend(base.node, space_label)] = base.mass;
      }
    }

    std::vector<Entry> candidates;
    for (Entry& e : next.entries()) {
      const Node& n = tree.node(e.node);
      e.score = ComposeScore(LogAdd(e.mass.blank, e.mass.nonblank), n.lm_log,
                             n.emissions, config);
      if (e.score == kLogZero || e.score < config.prune_floor) continue;
      candidates.push_back(e);
    }
    if (candidates.size() > static_cast<size_t>(config.beam_width)) {
      std::nth_element(candidates.begin(),
                       candidates.begin() + config.beam_width, candidates.end(),
                       rank);
      candidates.resize(config.beam_width);
    }
    std::sort(candidates.begin(), candidates.end(), rank);
    beam = std::move(candidates);
    if (beam.empty()) break;
  }

  for (const Entry& e : beam) {
    const Node& n = tree.node(e.node);
    if (space_label >= 0 && n.label == space_label) continue;
    BeamHypothesis hyp;
    hyp.prefix.labels = tree.Labels(e.node);
    hyp.log_blank = e.mass.blank;
    hyp.log_nonblank = e.mass.nonblank;
    hyp.lm_log = n.lm_log;
    hyp.emissions = n.emissions;
    hyp.lm_state = n.lm_state;
    hyp.score = e.score;
    result.hypotheses.push_back(std::move(hyp));
    if (result.hypotheses.size() == static_cast<size_t>(config.nbest)) break;
  }
  if (result.hypotheses.empty()) result.hypotheses.emplace_back();
  return result;
}

BeamResult BeamDecode(const PosteriorMatrix& posteriors,
                      const Alphabet& alphabet, const CharLm& lm,
                      const BeamConfig& config) {
  auto session = lm.OpenSession();
  BeamResult result = BeamDecode(posteriors, alphabet, *session, config);
  session->Close();
  return result;
}

}  // namespace ctcdec
