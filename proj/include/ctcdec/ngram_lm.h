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

// Backoff n-gram language model over string tokens, shared by the character
// and word models. Probabilities are stored as log10 (ARPA convention).

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ctcdec {

// log10 value ARPA files use for "never predicted" (the <s> unigram).
inline constexpr double kArpaLogZero = -99.0;

struct NGramHash {
  size_t operator()(const std::vector<int>& ngram) const {
    size_t h = 1469598103934665603ull;
    for (int id : ngram) h = (h ^ static_cast<size_t>(id)) * 1099511628211ull;
    return h;
  }
};

class NGramLm {
 public:
  static constexpr std::string_view kBos = "<s>";
  static constexpr std::string_view kEos = "</s>";
  static constexpr std::string_view kUnk = "<unk>";

  struct Entry {
    double log10_prob = kArpaLogZero;
    std::optional<double> log10_backoff;
  };
  using Table = std::unordered_map<std::vector<int>, Entry, NGramHash>;

  // `vocab` lists every token; <s>, </s> and <unk> are added when missing.
  NGramLm(int order, std::vector<std::string> vocab);

  int order() const { return order_; }
  int vocab_size() const { return static_cast<int>(vocab_.size()); }
  const std::vector<std::string>& vocab() const { return vocab_; }
  const std::string& Word(int id) const { return vocab_.at(id); }
  std::optional<int> Find(std::string_view word) const;
  // Unknown words map to <unk>.
  int Id(std::string_view word) const;

  int bos() const { return bos_; }
  int eos() const { return eos_; }
  int unk() const { return unk_; }

  // Every id except <s>: the set the model distributes probability over.
  std::vector<int> PredictedIds() const;

  // Standard backoff evaluation of log10 P(word | context). Only the last
  // order-1 context ids are used.
  double Log10Prob(std::span<const int> context, int word) const;
  double Log10Prob(const std::vector<std::string>& context,
                   std::string_view word) const;

  const Entry* FindEntry(std::span<const int> ngram) const;
  void SetEntry(const std::vector<int>& ngram, Entry entry);
  // Entries of one order (1-based).
  const Table& table(int n) const { return tables_.at(n - 1); }
  size_t num_entries(int n) const { return tables_.at(n - 1).size(); }

  // Entries of order n sorted by their token strings; used for output.
  std::vector<std::pair<std::vector<int>, Entry>> SortedEntries(int n) const;

 private:
  int order_;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> index_;
  std::vector<Table> tables_;
  int bos_, eos_, unk_;
};

struct KneserNeyOptions {
  int order = 3;
  double discount = 0.75;
  // Tokens that get unigram (floor) mass even when absent from the corpus.
  std::vector<std::string> extra_vocab;
};

// Interpolated Kneser-Ney with one fixed discount. Each sentence is wrapped
// in <s> ... </s>; lower orders use continuation counts except for n-grams
// that start with <s>. Throws kInvalidInput on an empty corpus and kConfig on
// an order < 1 or a discount outside (0, 1).
NGramLm TrainKneserNey(const std::vector<std::vector<std::string>>& sentences,
                       const KneserNeyOptions& options);

// ARPA text. Values are written with 8 decimals.
std::string SerializeArpa(const NGramLm& lm);
NGramLm ParseArpa(std::string_view text);
NGramLm ReadArpaFile(const std::filesystem::path& path);
void WriteArpaFile(const std::filesystem::path& path, const NGramLm& lm);

}  // namespace ctcdec
