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

#include <string>
#include <vector>

#include "ctcdec/ngram_lm.h"

namespace ctcdec {

// Whitespace tokenization of one corpus line.
std::vector<std::string> SplitWords(std::string_view line);

// Interpolated Kneser-Ney word model; empty lines are ignored.
NGramLm TrainWordNGram(const std::vector<std::string>& lines, int order,
                       double discount = 0.75);

// log10 P(word | context) with unknown words mapped to <unk>.
double WordScore(const NGramLm& lm, const std::vector<std::string>& context,
                 const std::string& word);

// Corpus words (no reserved symbols), sorted.
std::vector<std::string> Vocabulary(const NGramLm& lm);

// 10^(-(1/N) sum log10 P), N counting words and sentence ends.
double Perplexity(const NGramLm& lm, const std::vector<std::string>& lines);

}  // namespace ctcdec
