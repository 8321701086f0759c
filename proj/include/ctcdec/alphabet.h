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

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ctcdec {

// How word boundaries are encoded in a character transcription.
enum class WordConvention {
  kNone,   // no boundaries; the transcription is one token stream
  kSpace,  // an explicit space symbol separates words
  kCase,   // an uppercase character starts a new word
};

// The blank-augmented label set. Index 0 is always the blank "<blk>".
class Alphabet {
 public:
  static constexpr int kBlank = 0;
  static constexpr std::string_view kBlankSymbol = "<blk>";
  static constexpr std::string_view kSpaceSymbol = "<sp>";

  Alphabet() : Alphabet(std::vector<std::string>{std::string(kBlankSymbol)}) {}

  // `symbols` includes the blank at position 0. Throws kInvalidInput if the
  // blank is missing or symbols are empty or repeated. The word convention
  // defaults to kSpace when "<sp>" is present and kNone otherwise.
  explicit Alphabet(std::vector<std::string> symbols);

  // Prepends the blank to `labels`.
  static Alphabet FromLabels(const std::vector<std::string>& labels);

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& Symbol(int index) const { return symbols_.at(index); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  std::optional<int> Find(std::string_view symbol) const;
  // Like Find() but throws kInvalidInput for unknown symbols.
  int Index(std::string_view symbol) const;

  bool Contains(int index) const { return index >= 0 && index < size(); }
  std::optional<int> space_index() const { return space_index_; }
  WordConvention convention() const { return convention_; }

  // kSpace requires a space symbol; throws kConfig otherwise.
  Alphabet WithConvention(WordConvention convention) const;
  // Appends "<sp>" (if absent) and switches to the space convention.
  Alphabet WithSpace() const;

  bool operator==(const Alphabet& other) const {
    return symbols_ == other.symbols_ && convention_ == other.convention_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
  std::optional<int> space_index_;
  WordConvention convention_ = WordConvention::kNone;
};

}  // namespace ctcdec
