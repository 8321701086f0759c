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

#include "ctcdec/score.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ctcdec/common.h"

namespace ctcdec {
namespace {

std::string Lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::string Percent(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * rate);
  return buf;
}

nlohmann::json CountsJson(const AlignmentReport& r) {
  return {{"words", r.ref_tokens},
          {"correct", r.correct},
          {"substitutions", r.substitutions},
          {"deletions", r.deletions},
          {"insertions", r.insertions},
          {"wer", r.wer()},
          {"substitution_rate", r.substitution_rate()},
          {"deletion_rate", r.deletion_rate()},
          {"insertion_rate", r.insertion_rate()}};
}

}  // namespace

void AlignmentReport::Accumulate(const AlignmentReport& other) {
  ref_tokens += other.ref_tokens;
  correct += other.correct;
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  pairs.insert(pairs.end(), other.pairs.begin(), other.pairs.end());
}

AlignmentReport Align(const std::vector<std::string>& ref,
                      const std::vector<std::string>& hyp) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1, 0));
  for (size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      int diag = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d[i][j] = std::min({diag, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }

  AlignmentReport report;
  report.ref_tokens = static_cast<int>(n);
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        d[i][j] == d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      const bool same = ref[i - 1] == hyp[j - 1];
      report.pairs.push_back(
          {same ? EditOp::kCorrect : EditOp::kSubstitution, ref[i - 1], hyp[j - 1]});
      ++(same ? report.correct : report.substitutions);
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      report.pairs.push_back({EditOp::kDeletion, ref[i - 1], ""});
      ++report.deletions;
      --i;
    } else {
      report.pairs.push_back({EditOp::kInsertion, "", hyp[j - 1]});
      ++report.insertions;
      --j;
    }
  }
  std::reverse(report.pairs.begin(), report.pairs.end());
  return report;
}

std::vector<std::string> NormalizeTokens(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(Lower(token));
  return out;
}

OovReport OovAnalysis(const std::vector<std::string>& hyp,
                      const std::set<std::string>& vocabulary, bool lowercase) {
  OovReport report;
  report.total = static_cast<int>(hyp.size());
  for (const auto& raw : hyp) {
    std::string token = lowercase ? Lower(raw) : raw;
    if (!vocabulary.contains(token)) {
      ++report.count;
      report.tokens.push_back(token);
    }
  }
  if (report.total > 0) report.rate = static_cast<double>(report.count) / report.total;
  return report;
}

SystemScore ScoreSystem(std::string name, const Transcripts& ref,
                        const Transcripts& hyp,
                        const std::set<std::string>* vocabulary) {
  std::map<std::string, const std::string*> hyp_by_id;
  for (const auto& [id, text] : hyp) hyp_by_id[id] = &text;
  std::set<std::string> ref_ids;
  for (const auto& [id, text] : ref) ref_ids.insert(id);
  for (const auto& [id, text] : hyp) {
    if (!ref_ids.contains(id)) {
      throw Error(ErrorKind::kInvalidInput,
                  "hypothesis utterance \"" + id + "\" has no reference");
    }
  }

  SystemScore system;
  system.name = std::move(name);
  std::vector<std::string> all_hyp_tokens;
  for (const auto& [id, text] : ref) {
    auto it = hyp_by_id.find(id);
    auto hyp_tokens = NormalizeTokens(it == hyp_by_id.end() ? "" : *it->second);
    UtteranceScore utt{id, Align(NormalizeTokens(text), hyp_tokens)};
    system.totals.Accumulate(utt.report);
    system.per_utterance.push_back(std::move(utt));
    all_hyp_tokens.insert(all_hyp_tokens.end(), hyp_tokens.begin(), hyp_tokens.end());
  }
  system.utterances = static_cast<int>(ref.size());
  // Tokens are already lowercased by the normalization.
  if (vocabulary) system.oov = OovAnalysis(all_hyp_tokens, *vocabulary);
  return system;
}

std::string FormatTable(const CompareReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-16s %-8s %6s %7s %8s %7s %7s %7s %7s\n",
                "system", "subset", "utts", "words", "WER%", "S%", "D%", "I%", "OOV");
  out << line;
  for (const auto& s : report.systems) {
    const auto& t = s.totals;
    std::string oov = s.oov ? std::to_string(s.oov->count) : "-";
    std::snprintf(line, sizeof(line), "%-16s %-8s %6d %7d %8s %7s %7s %7s %7s\n",
                  s.name.c_str(), s.subset.c_str(), s.utterances, t.ref_tokens,
                  Percent(t.wer()).c_str(), Percent(t.substitution_rate()).c_str(),
                  Percent(t.deletion_rate()).c_str(),
                  Percent(t.insertion_rate()).c_str(), oov.c_str());
    out << line;
  }
  if (report.insertion_bonus) {
    std::snprintf(line, sizeof(line), "insertion bonus b = %.4g, log2(b) = %.4f bits",
                  *report.insertion_bonus, std::log2(*report.insertion_bonus));
    out << line;
    if (report.lm_bpc) {
      std::snprintf(line, sizeof(line), ", char LM entropy = %.4f BPC", *report.lm_bpc);
      out << line;
    }
    out << "\n";
  }
  return out.str();
}

std::string FormatJson(const CompareReport& report) {
  nlohmann::json systems = nlohmann::json::array();
  for (const auto& s : report.systems) {
    nlohmann::json row = CountsJson(s.totals);
    row["name"] = s.name;
    row["subset"] = s.subset;
    row["utterances"] = s.utterances;
    if (s.oov) {
      row["oov"] = {{"count", s.oov->count},
                    {"total", s.oov->total},
                    {"rate", s.oov->rate},
                    {"tokens", s.oov->tokens}};
    }
    if (!s.per_utterance.empty()) {
      nlohmann::json utts = nlohmann::json::array();
      for (const auto& u : s.per_utterance) {
        nlohmann::json j = CountsJson(u.report);
        j["id"] = u.id;
        utts.push_back(std::move(j));
      }
      row["per_utterance"] = std::move(utts);
    }
    systems.push_back(std::move(row));
  }
  nlohmann::json out = {{"systems", std::move(systems)}};
  if (report.insertion_bonus) {
    out["insertion_bonus"] = *report.insertion_bonus;
    out["log2_insertion_bonus"] = std::log2(*report.insertion_bonus);
  }
  if (report.lm_bpc) out["lm_bpc"] = *report.lm_bpc;
  return out.dump(2) + "\n";
}

std::string FormatPerUtterance(const SystemScore& system) {
  std::ostringstream out;
  for (const auto& u : system.per_utterance) {
    const auto& r = u.report;
    out << system.name << '\t' << u.id << '\t' << r.ref_tokens << '\t'
        << r.substitutions << '\t' << r.deletions << '\t' << r.insertions << '\t'
        << Percent(r.wer()) << '\n';
  }
  return out.str();
}

}  // namespace ctcdec
