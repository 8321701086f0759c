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

#include "ctcdec/word_lm.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ctcdec/common.h"

namespace ctcdec {

std::vector<std::string> SplitWords(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

NGramLm TrainWordNGram(const std::vector<std::string>& lines, int order,
                       double discount) {
  std::vector<std::vector<std::string>> sentences;
  for (const auto& line : lines) {
    auto words = SplitWords(line);
    if (!words.empty()) sentences.push_back(std::move(words));
  }
  KneserNeyOptions options;
  options.order = order;
  options.discount = discount;
  return TrainKneserNey(sentences, options);
}

double WordScore(const NGramLm& lm, const std::vector<std::string>& context,
                 const std::string& word) {
  return lm.Log10Prob(context, word);
}

std::vector<std::string> Vocabulary(const NGramLm& lm) {
  std::vector<std::string> out;
  for (int id = 0; id < lm.vocab_size(); ++id) {
    if (id != lm.bos() && id != lm.eos() && id != lm.unk()) out.push_back(lm.Word(id));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double Perplexity(const NGramLm& lm, const std::vector<std::string>& lines) {
  double log10_sum = 0.0;
  size_t count = 0;
  for (const auto& line : lines) {
    auto words = SplitWords(line);
    if (words.empty()) continue;
    std::vector<int> history = {lm.bos()};
    for (const auto& w : words) {
      int id = lm.Id(w);
      log10_sum += lm.Log10Prob(history, id);
      history.push_back(id);
      ++count;
    }
    log10_sum += lm.Log10Prob(history, lm.eos());
    ++count;
  }
  if (count == 0) throw Error(ErrorKind::kInvalidInput, "perplexity of empty text");
  return std::pow(10.0, -log10_sum / static_cast<double>(count));
}

}  // namespace ctcdec
