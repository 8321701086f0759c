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

#include "ctcdec/io.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "ctcdec/common.h"

namespace ctcdec {
namespace {

void PutU32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t GetU32(std::string_view bytes, size_t offset) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<uint32_t>(static_cast<unsigned char>(bytes[offset + i]))
         << (8 * i);
  }
  return v;
}

std::string LineRef(std::string_view what, size_t line) {
  return std::string(what) + " line " + std::to_string(line + 1);
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

}  // namespace

std::string ReadFileToString(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteStringToFile(const std::filesystem::path& path,
                       std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

std::string SerializePosteriors(const PosteriorMatrix& posteriors) {
  std::string out(kPosteriorMagic, 4);
  PutU32(out, kPosteriorVersion);
  PutU32(out, static_cast<uint32_t>(posteriors.num_frames()));
  PutU32(out, static_cast<uint32_t>(posteriors.num_labels()));
  out.reserve(out.size() + posteriors.data().size() * 4);
  for (double v : posteriors.data()) {
    PutU32(out, std::bit_cast<uint32_t>(static_cast<float>(v)));
  }
  return out;
}

PosteriorMatrix ParsePosteriors(std::string_view bytes) {
  constexpr size_t kHeader = 16;
  if (bytes.size() < 4 || bytes.substr(0, 4) != std::string_view(kPosteriorMagic, 4)) {
    throw ParseError(ParseErrorCode::kBadMagic,
                     "posterior file: expected \"CTCP\" at byte offset 0");
  }
  if (bytes.size() < kHeader) {
    throw ParseError(ParseErrorCode::kTruncated,
                     "posterior file: header ends at byte offset " +
                         std::to_string(bytes.size()) + ", expected 16 bytes");
  }
  uint32_t version = GetU32(bytes, 4);
  if (version != kPosteriorVersion) {
    throw ParseError(ParseErrorCode::kBadVersion,
                     "posterior file: version " + std::to_string(version) +
                         " at byte offset 4");
  }
  uint32_t T = GetU32(bytes, 8);
  uint32_t K = GetU32(bytes, 12);
  if (T == 0 || K == 0 || T > (1u << 30) / K) {
    throw ParseError(ParseErrorCode::kBadValue,
                     "posterior file: bad dimensions T=" + std::to_string(T) +
                         " K=" + std::to_string(K) + " at byte offset 8");
  }
  const size_t expected = kHeader + static_cast<size_t>(T) * K * 4;
  if (bytes.size() < expected) {
    throw ParseError(ParseErrorCode::kTruncated,
                     "posterior file: payload ends at byte offset " +
                         std::to_string(bytes.size()) + ", expected " +
                         std::to_string(expected) + " bytes");
  }
  if (bytes.size() > expected) {
    throw ParseError(ParseErrorCode::kTrailingData,
                     "posterior file: unexpected data at byte offset " +
                         std::to_string(expected));
  }
  std::vector<double> values(static_cast<size_t>(T) * K);
  for (size_t i = 0; i < values.size(); ++i) {
    float f = std::bit_cast<float>(GetU32(bytes, kHeader + 4 * i));
    if (std::isnan(f) || f == std::numeric_limits<float>::infinity()) {
      throw ParseError(ParseErrorCode::kBadValue,
                       "posterior file: invalid value at byte offset " +
                           std::to_string(kHeader + 4 * i));
    }
    values[i] = f;
  }
  if (auto bad = FirstUnnormalizedFrame(static_cast<int>(T), static_cast<int>(K),
                                        values, kFileRowTolerance)) {
    throw ParseError(ParseErrorCode::kUnnormalized,
                     "posterior file: frame " + std::to_string(*bad) +
                         " does not sum to 1 (byte offset " +
                         std::to_string(kHeader + 4 * static_cast<size_t>(*bad) * K) +
                         ")");
  }
  return PosteriorMatrix(static_cast<int>(T), static_cast<int>(K),
                         std::move(values), kFileRowTolerance);
}

PosteriorMatrix ReadPosteriorFile(const std::filesystem::path& path) {
  return ParsePosteriors(ReadFileToString(path));
}

void WritePosteriorFile(const std::filesystem::path& path,
                        const PosteriorMatrix& posteriors) {
  WriteStringToFile(path, SerializePosteriors(posteriors));
}

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

Alphabet ParseAlphabet(std::string_view text) {
  std::vector<std::string> lines = SplitLines(text);
  if (lines.empty() || lines[0] != Alphabet::kBlankSymbol) {
    throw ParseError(ParseErrorCode::kMissingBlank,
                     "alphabet line 1 must be exactly <blk>");
  }
  std::set<std::string> seen;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) {
      throw ParseError(ParseErrorCode::kEmptySymbol, LineRef("alphabet", i) + " is empty");
    }
    if (!seen.insert(lines[i]).second) {
      throw ParseError(ParseErrorCode::kDuplicateSymbol,
                       LineRef("alphabet", i) + ": '" + lines[i] + "' repeats");
    }
  }
  return Alphabet(std::move(lines));
}

std::string SerializeAlphabet(const Alphabet& alphabet) {
  std::string out;
  for (const auto& s : alphabet.symbols()) {
    out += s;
    out += '\n';
  }
  return out;
}

Alphabet ReadAlphabetFile(const std::filesystem::path& path) {
  return ParseAlphabet(ReadFileToString(path));
}

std::vector<LexiconEntry> ParseLexicon(std::string_view text) {
  std::vector<LexiconEntry> entries;
  auto lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(ParseErrorCode::kBadLine,
                       LineRef("lexicon", i) + ": expected WORD<TAB>units");
    }
    LexiconEntry entry{line.substr(0, tab), SplitWhitespace(line.substr(tab + 1))};
    if (entry.units.empty()) {
      throw ParseError(ParseErrorCode::kBadLine,
                       LineRef("lexicon", i) + ": word '" + entry.word +
                           "' has no units");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<LexiconEntry> ReadLexiconFile(const std::filesystem::path& path) {
  return ParseLexicon(ReadFileToString(path));
}

std::string SerializeLexicon(const std::vector<LexiconEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += e.word;
    out += '\t';
    for (size_t i = 0; i < e.units.size(); ++i) {
      if (i) out += ' ';
      out += e.units[i];
    }
    out += '\n';
  }
  return out;
}

PriorVector ParsePrior(std::string_view text) {
  std::vector<double> values;
  auto lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size()) {
      throw ParseError(ParseErrorCode::kBadValue,
                       LineRef("prior", i) + ": '" + line + "' is not a number");
    }
    values.push_back(v);
  }
  try {
    return PriorVector(std::move(values));
  } catch (const Error& e) {
    throw ParseError(ParseErrorCode::kBadValue, std::string("prior file: ") + e.what());
  }
}

std::string SerializePrior(const PriorVector& prior) {
  std::string out;
  char buffer[64];
  for (double v : prior.data()) {
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    out.append(buffer, ptr);
    out += '\n';
  }
  return out;
}

std::vector<KeyedLine> ParseKeyedLines(std::string_view text,
                                       std::string_view what) {
  std::vector<KeyedLine> out;
  std::set<std::string> keys;
  auto lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    std::string key = line.substr(0, tab);
    std::string value = tab == std::string::npos ? "" : line.substr(tab + 1);
    if (key.empty()) {
      throw ParseError(ParseErrorCode::kBadLine, LineRef(what, i) + ": empty key");
    }
    if (!keys.insert(key).second) {
      throw ParseError(ParseErrorCode::kDuplicateSymbol,
                       LineRef(what, i) + ": duplicate key '" + key + "'");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

}  // namespace ctcdec
