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

// File formats shared by all decoders.
//
// Posterior file ("CTCP"), all integers little-endian:
//   bytes 0..3   magic "CTCP"
//   u32          version (1)
//   u32          T (frames, >= 1)
//   u32          K (labels, >= 1)
//   f32 x T*K    natural-log probabilities, frame-major
// Nothing may follow the payload.
//
// Alphabet file: UTF-8, one symbol per line, the first line is "<blk>".
// Lexicon file:  "WORD<TAB>unit1 unit2 ..." per line.
// Prior file:    one natural-log prior per line, label order.
// Manifest:      "UTTID<TAB>posterior-path" per line.
// Transcripts:   "UTTID<TAB>token sequence" per line.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctcdec/alphabet.h"
#include "ctcdec/posterior.h"

namespace ctcdec {

inline constexpr char kPosteriorMagic[4] = {'C', 'T', 'C', 'P'};
inline constexpr uint32_t kPosteriorVersion = 1;

// Whole-file helpers; throw kIo when the file cannot be opened.
std::string ReadFileToString(const std::filesystem::path& path);
void WriteStringToFile(const std::filesystem::path& path, std::string_view data);

// Serialized posterior bytes. Values are stored as f32, so a matrix survives a
// round trip exactly when its entries are f32-representable.
std::string SerializePosteriors(const PosteriorMatrix& posteriors);
// Errors name the byte offset (structure) or frame index (normalization).
PosteriorMatrix ParsePosteriors(std::string_view bytes);
PosteriorMatrix ReadPosteriorFile(const std::filesystem::path& path);
void WritePosteriorFile(const std::filesystem::path& path,
                        const PosteriorMatrix& posteriors);

Alphabet ParseAlphabet(std::string_view text);
std::string SerializeAlphabet(const Alphabet& alphabet);
Alphabet ReadAlphabetFile(const std::filesystem::path& path);

struct LexiconEntry {
  std::string word;
  std::vector<std::string> units;
  bool operator==(const LexiconEntry&) const = default;
};
std::vector<LexiconEntry> ParseLexicon(std::string_view text);
std::vector<LexiconEntry> ReadLexiconFile(const std::filesystem::path& path);
std::string SerializeLexicon(const std::vector<LexiconEntry>& entries);

PriorVector ParsePrior(std::string_view text);
std::string SerializePrior(const PriorVector& prior);

// Splits on '\n', dropping a trailing '\r' and the final empty line.
std::vector<std::string> SplitLines(std::string_view text);

using KeyedLine = std::pair<std::string, std::string>;
// "KEY<TAB>value" lines. Empty lines are skipped; a line without a tab has an
// empty value. Duplicate keys are an error.
std::vector<KeyedLine> ParseKeyedLines(std::string_view text,
                                       std::string_view what);

}  // namespace ctcdec
