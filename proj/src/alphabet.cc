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

#include "ctcdec/alphabet.h"

#include "ctcdec/common.h"

namespace ctcdec {

Alphabet::Alphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty() || symbols_[0] != kBlankSymbol) {
    throw Error(ErrorKind::kInvalidInput,
                "alphabet must start with the blank symbol <blk>");
  }
  for (int i = 0; i < size(); ++i) {
    const std::string& s = symbols_[i];
    if (s.empty()) {
      throw Error(ErrorKind::kInvalidInput,
                  "alphabet symbol " + std::to_string(i) + " is empty");
    }
    if (!index_.emplace(s, i).second) {
      throw Error(ErrorKind::kInvalidInput,
                  "duplicate alphabet symbol '" + s + "'");
    }
    if (s == kSpaceSymbol) space_index_ = i;
  }
  convention_ = space_index_ ? WordConvention::kSpace : WordConvention::kNone;
}

Alphabet Alphabet::FromLabels(const std::vector<std::string>& labels) {
  std::vector<std::string> symbols;
  symbols.reserve(labels.size() + 1);
  symbols.emplace_back(kBlankSymbol);
  symbols.insert(symbols.end(), labels.begin(), labels.end());
  return Alphabet(std::move(symbols));
}

std::optional<int> Alphabet::Find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Alphabet::Index(std::string_view symbol) const {
  auto index = Find(symbol);
  if (!index) {
    throw Error(ErrorKind::kInvalidInput,
                "symbol '" + std::string(symbol) + "' not in alphabet");
  }
  return *index;
}

Alphabet Alphabet::WithConvention(WordConvention convention) const {
  if (convention == WordConvention::kSpace && !space_index_) {
    throw Error(ErrorKind::kConfig,
                "space word convention requires a <sp> symbol");
  }
  Alphabet copy = *this;
  copy.convention_ = convention;
  return copy;
}

Alphabet Alphabet::WithSpace() const {
  if (space_index_) return WithConvention(WordConvention::kSpace);
  std::vector<std::string> symbols = symbols_;
  symbols.emplace_back(kSpaceSymbol);
  return Alphabet(std::move(symbols));
}

}  // namespace ctcdec
