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

#include "ctcdec/greedy.h"

#include <string>

#include "ctcdec/common.h"
#include "ctcdec/kernels.h"

namespace ctcdec {
namespace {

bool StartsUpper(const std::string& symbol) {
  return !symbol.empty() && symbol[0] >= 'A' && symbol[0] <= 'Z';
}

std::string LowerAscii(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

}  // namespace

Transcription GreedyDecode(const PosteriorMatrix& posteriors,
                           const Alphabet& alphabet, int num_threads) {
  if (posteriors.num_labels() != alphabet.size()) {
    throw Error(ErrorKind::kInvalidInput,
                "posteriors have " + std::to_string(posteriors.num_labels()) +
                    " labels, alphabet has " + std::to_string(alphabet.size()));
  }
  return Squash(BestPath(posteriors, num_threads), alphabet);
}

std::vector<std::string> RenderWords(const Transcription& z,
                                     const Alphabet& alphabet) {
  std::vector<std::string> words;
  switch (alphabet.convention()) {
    case WordConvention::kNone:
      throw Error(ErrorKind::kUnsupported,
                  "alphabet declares no word boundary convention");
    case WordConvention::kSpace: {
      std::string current;
      for (int label : z.labels) {
        if (label == alphabet.space_index()) {
          if (!current.empty()) words.push_back(std::move(current));
          current.clear();
        } else {
          current += alphabet.Symbol(label);
        }
      }
      if (!current.empty()) words.push_back(std::move(current));
      break;
    }
    case WordConvention::kCase: {
      for (int label : z.labels) {
        const std::string& symbol = alphabet.Symbol(label);
        if (words.empty() || StartsUpper(symbol)) words.emplace_back();
        words.back() += LowerAscii(symbol);
      }
      break;
    }
  }
  return words;
}

std::string RenderText(const Transcription& z, const Alphabet& alphabet) {
  std::string out;
  if (alphabet.convention() == WordConvention::kNone) {
    for (int label : z.labels) {
      out += label == alphabet.space_index() ? std::string(" ")
                                             : alphabet.Symbol(label);
    }
    return out;
  }
  for (const auto& word : RenderWords(z, alphabet)) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

}  // namespace ctcdec
