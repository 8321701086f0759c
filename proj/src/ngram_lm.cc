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

#include "ctcdec/ngram_lm.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "ctcdec/common.h"
#include "ctcdec/io.h"

namespace ctcdec {

NGramLm::NGramLm(int order, std::vector<std::string> vocab)
    : order_(order), vocab_(std::move(vocab)) {
  if (order < 1) throw Error(ErrorKind::kConfig, "n-gram order must be >= 1");
  for (std::string_view special : {kBos, kEos, kUnk}) {
    if (std::find(vocab_.begin(), vocab_.end(), special) == vocab_.end()) {
      vocab_.emplace_back(special);
    }
  }
  for (int i = 0; i < vocab_size(); ++i) {
    if (!index_.emplace(vocab_[i], i).second) {
      throw Error(ErrorKind::kInvalidInput,
                  "duplicate vocabulary entry '" + vocab_[i] + "'");
    }
  }
  bos_ = index_.at(std::string(kBos));
  eos_ = index_.at(std::string(kEos));
  unk_ = index_.at(std::string(kUnk));
  tables_.resize(order);
}

std::optional<int> NGramLm::Find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int NGramLm::Id(std::string_view word) const {
  return Find(word).value_or(unk_);
}

std::vector<int> NGramLm::PredictedIds() const {
  std::vector<int> ids;
  for (int i = 0; i < vocab_size(); ++i) {
    if (i != bos_) ids.push_back(i);
  }
  return ids;
}

double NGramLm::Log10Prob(std::span<const int> context, int word) const {
  if (word < 0 || word >= vocab_size()) word = unk_;
  const size_t max_context =
      std::min(context.size(), static_cast<size_t>(order_ - 1));
  thread_local std::vector<int> key;
  double backoff = 0.0;
  for (size_t n = max_context;; --n) {
    auto history = context.last(n);
    key.assign(history.begin(), history.end());
    key.push_back(word);
    const Table& table = tables_[n];
    if (auto it = table.find(key); it != table.end()) {
      return backoff + it->second.log10_prob;
    }
    if (n == 0) break;
    key.pop_back();
    const Table& lower = tables_[n - 1];
    if (auto it = lower.find(key);
        it != lower.end() && it->second.log10_backoff) {
      backoff += *it->second.log10_backoff;
    }
  }
  return kArpaLogZero;
}

double NGramLm::Log10Prob(const std::vector<std::string>& context,
                          std::string_view word) const {
  std::vector<int> ids;
  ids.reserve(context.size());
  for (const auto& w : context) ids.push_back(Id(w));
  return Log10Prob(ids, Id(word));
}

const NGramLm::Entry* NGramLm::FindEntry(std::span<const int> ngram) const {
  if (ngram.empty() || ngram.size() > static_cast<size_t>(order_)) return nullptr;
  const Table& table = tables_[ngram.size() - 1];
  auto it = table.find(std::vector<int>(ngram.begin(), ngram.end()));
  return it == table.end() ? nullptr : &it->second;
}

void NGramLm::SetEntry(const std::vector<int>& ngram, Entry entry) {
  if (ngram.empty() || ngram.size() > static_cast<size_t>(order_)) {
    throw Error(ErrorKind::kInvalidInput, "n-gram length outside model order");
  }
  tables_[ngram.size() - 1][ngram] = entry;
}

std::vector<std::pair<std::vector<int>, NGramLm::Entry>> NGramLm::SortedEntries(
    int n) const {
  std::vector<std::pair<std::vector<int>, Entry>> out(table(n).begin(),
                                                      table(n).end());
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return std::lexicographical_compare(
        a.first.begin(), a.first.end(), b.first.begin(), b.first.end(),
        [&](int x, int y) { return vocab_[x] < vocab_[y]; });
  });
  return out;
}

// ---------------------------------------------------------------------------
// Kneser-Ney estimation.

NGramLm TrainKneserNey(const std::vector<std::vector<std::string>>& sentences,
                       const KneserNeyOptions& options) {
  if (sentences.empty()) {
    throw Error(ErrorKind::kInvalidInput, "cannot train on an empty corpus");
  }
  if (options.order < 1) {
    throw Error(ErrorKind::kConfig, "n-gram order must be >= 1");
  }
  const double D = options.discount;
  if (!(D > 0.0 && D < 1.0)) {
    throw Error(ErrorKind::kConfig, "Kneser-Ney discount must be in (0, 1)");
  }
  const int N = options.order;

  std::set<std::string> tokens(options.extra_vocab.begin(),
                               options.extra_vocab.end());
  for (const auto& s : sentences) tokens.insert(s.begin(), s.end());
  std::vector<std::string> vocab = {std::string(NGramLm::kBos),
                                    std::string(NGramLm::kEos),
                                    std::string(NGramLm::kUnk)};
  for (const auto& t : tokens) {
    if (t != NGramLm::kBos && t != NGramLm::kEos && t != NGramLm::kUnk) {
      vocab.push_back(t);
    }
  }
  NGramLm lm(N, std::move(vocab));

  using Counts = std::unordered_map<std::vector<int>, double, NGramHash>;
  std::vector<Counts> raw(N);
  for (const auto& s : sentences) {
    std::vector<int> ids = {lm.bos()};
    for (const auto& w : s) ids.push_back(lm.Id(w));
    ids.push_back(lm.eos());
    for (size_t i = 1; i < ids.size(); ++i) {
      for (int k = 1; k <= N && static_cast<size_t>(k) <= i + 1; ++k) {
        raw[k - 1][std::vector<int>(ids.begin() + (i + 1 - k),
                                    ids.begin() + (i + 1))] += 1.0;
      }
    }
  }

  // Adjusted counts: raw for the top order and for <s>-initial n-grams,
  // distinct left extensions otherwise.
  std::vector<Counts> adjusted(N);
  adjusted[N - 1] = raw[N - 1];
  for (int k = N - 1; k >= 1; --k) {
    Counts continuation;
    for (const auto& [g, c] : raw[k]) {
      continuation[std::vector<int>(g.begin() + 1, g.end())] += 1.0;
    }
    for (const auto& [g, c] : raw[k - 1]) {
      adjusted[k - 1][g] = g[0] == lm.bos() ? c : continuation[g];
    }
  }

  struct ContextStats {
    double total = 0.0;
    double types = 0.0;
  };
  auto gamma = [D](const ContextStats& s) { return D * s.types / s.total; };

  // Unigrams, interpolated with the uniform distribution over predicted ids.
  ContextStats root;
  for (const auto& [g, a] : adjusted[0]) {
    root.total += a;
    root.types += a > 0 ? 1 : 0;
  }
  const std::vector<int> predicted = lm.PredictedIds();
  const double uniform = 1.0 / static_cast<double>(predicted.size());
  for (int w : predicted) {
    auto it = adjusted[0].find({w});
    double a = it == adjusted[0].end() ? 0.0 : it->second;
    double p = std::max(a - D, 0.0) / root.total + gamma(root) * uniform;
    lm.SetEntry({w}, {std::log10(p), std::nullopt});
  }
  lm.SetEntry({lm.bos()}, {kArpaLogZero, std::nullopt});

  for (int k = 2; k <= N; ++k) {
    std::unordered_map<std::vector<int>, ContextStats, NGramHash> stats;
    for (const auto& [g, a] : adjusted[k - 1]) {
      auto& s = stats[std::vector<int>(g.begin(), g.end() - 1)];
      s.total += a;
      s.types += 1;
    }
    for (const auto& [h, s] : stats) {
      NGramLm::Entry entry = *lm.FindEntry(h);
      entry.log10_backoff = std::log10(gamma(s));
      lm.SetEntry(h, entry);
    }
    // Sorted so the floating-point work is independent of hash order.
    std::vector<std::pair<std::vector<int>, double>> grams(
        adjusted[k - 1].begin(), adjusted[k - 1].end());
    std::sort(grams.begin(), grams.end());
    for (const auto& [g, a] : grams) {
      std::vector<int> h(g.begin(), g.end() - 1);
      const ContextStats& s = stats.at(h);
      std::span<const int> lower_context(g.data() + 1, g.size() - 2);
      double lower = std::pow(10.0, lm.Log10Prob(lower_context, g.back()));
      double p = std::max(a - D, 0.0) / s.total + gamma(s) * lower;
      lm.SetEntry(g, {std::log10(p), std::nullopt});
    }
  }
  return lm;
}

// ---------------------------------------------------------------------------
// ARPA.

namespace {

void AppendNumber(std::string& out, double v) {
  char buffer[64];
  int n = std::snprintf(buffer, sizeof(buffer), "%.8f", v);
  out.append(buffer, n);
}

std::vector<std::string_view> Fields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string At(size_t line) { return "ARPA line " + std::to_string(line + 1); }

double ParseNumber(std::string_view field, size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || std::isnan(v)) {
    throw ParseError(ParseErrorCode::kBadValue,
                     At(line) + ": '" + std::string(field) + "' is not a number");
  }
  return v;
}

}  // namespace

std::string SerializeArpa(const NGramLm& lm) {
  std::string out = "\\data\\\n";
  for (int n = 1; n <= lm.order(); ++n) {
    out += "ngram " + std::to_string(n) + "=" +
           std::to_string(lm.num_entries(n)) + "\n";
  }
  for (int n = 1; n <= lm.order(); ++n) {
    out += "\n\\" + std::to_string(n) + "-grams:\n";
    for (const auto& [ngram, entry] : lm.SortedEntries(n)) {
      AppendNumber(out, entry.log10_prob);
      for (int id : ngram) {
        out += '\t';
        out += lm.Word(id);
      }
      if (entry.log10_backoff) {
        out += '\t';
        AppendNumber(out, *entry.log10_backoff);
      }
      out += '\n';
    }
  }
  out += "\n\\end\\\n";
  return out;
}

NGramLm ParseArpa(std::string_view text) {
  const std::vector<std::string> lines = SplitLines(text);
  size_t i = 0;
  auto skip_blank = [&] {
    while (i < lines.size() && Fields(lines[i]).empty()) ++i;
  };
  skip_blank();
  if (i == lines.size() || lines[i] != "\\data\\") {
    throw ParseError(ParseErrorCode::kMissingSection,
                     "ARPA file has no \\data\\ header");
  }
  ++i;
  std::vector<size_t> declared;
  for (; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (Fields(line).empty()) continue;
    if (line.rfind("ngram ", 0) != 0) break;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(ParseErrorCode::kBadLine, At(i) + ": expected 'ngram N=count'");
    }
    double n = ParseNumber(std::string_view(line).substr(6, eq - 6), i);
    double count = ParseNumber(std::string_view(line).substr(eq + 1), i);
    if (n != static_cast<double>(declared.size() + 1) || count < 0 ||
        count != std::floor(count)) {
      throw ParseError(ParseErrorCode::kBadLine,
                       At(i) + ": n-gram orders must be declared as 1, 2, ...");
    }
    declared.push_back(static_cast<size_t>(count));
  }
  if (declared.empty() ||
      std::all_of(declared.begin(), declared.end(), [](size_t c) { return c == 0; })) {
    throw ParseError(ParseErrorCode::kMissingSection,
                     "ARPA file declares no n-grams");
  }

  // Sections are parsed into token-string form first; the vocabulary comes
  // from the unigram section.
  struct RawEntry {
    std::vector<std::string> words;
    NGramLm::Entry entry;
  };
  std::vector<std::vector<RawEntry>> sections(declared.size());
  for (size_t n = 1; n <= declared.size(); ++n) {
    skip_blank();
    std::string header = "\\" + std::to_string(n) + "-grams:";
    if (i == lines.size() || lines[i] != header) {
      throw ParseError(ParseErrorCode::kMissingSection,
                       "ARPA file is missing the " + header + " section" +
                           (i < lines.size() ? " (found '" + lines[i] + "' at " + At(i) + ")"
                                             : std::string()));
    }
    ++i;
    for (; i < lines.size(); ++i) {
      auto fields = Fields(lines[i]);
      if (fields.empty()) continue;
      if (fields[0].front() == '\\') break;
      if (fields.size() != n + 1 && fields.size() != n + 2) {
        throw ParseError(ParseErrorCode::kBadLine,
                         At(i) + ": expected " + std::to_string(n) + " words");
      }
      RawEntry raw;
      raw.entry.log10_prob = ParseNumber(fields[0], i);
      for (size_t w = 0; w < n; ++w) raw.words.emplace_back(fields[1 + w]);
      if (fields.size() == n + 2) raw.entry.log10_backoff = ParseNumber(fields[n + 1], i);
      sections[n - 1].push_back(std::move(raw));
    }
    if (sections[n - 1].size() != declared[n - 1]) {
      throw ParseError(ParseErrorCode::kCountMismatch,
                       "ARPA section " + header + " declares " +
                           std::to_string(declared[n - 1]) + " entries but lists " +
                           std::to_string(sections[n - 1].size()));
    }
  }
  skip_blank();
  if (i == lines.size() || lines[i] != "\\end\\") {
    throw ParseError(ParseErrorCode::kMissingSection, "ARPA file has no \\end\\ marker");
  }

  std::vector<std::string> vocab;
  for (const auto& raw : sections[0]) vocab.push_back(raw.words[0]);
  NGramLm lm(static_cast<int>(declared.size()), std::move(vocab));
  for (const auto& section : sections) {
    for (const auto& raw : section) {
      std::vector<int> ids;
      for (const auto& w : raw.words) {
        auto id = lm.Find(w);
        if (!id) {
          throw ParseError(ParseErrorCode::kBadLine,
                           "ARPA n-gram uses '" + w + "' which has no unigram");
        }
        ids.push_back(*id);
      }
      lm.SetEntry(ids, raw.entry);
    }
  }
  return lm;
}

NGramLm ReadArpaFile(const std::filesystem::path& path) {
  return ParseArpa(ReadFileToString(path));
}

void WriteArpaFile(const std::filesystem::path& path, const NGramLm& lm) {
  WriteStringToFile(path, SerializeArpa(lm));
}

}  // namespace ctcdec
