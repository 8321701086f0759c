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

// Character language models behind one scoring interface.
//
// A CharLm is immutable and may be shared between threads. Scoring happens
// through a CharLmSession, which owns the mutable per-decode state (interned
// contexts, or a child process for external models). States are integer
// handles that are only meaningful inside the session that produced them.

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctcdec/ngram_lm.h"
#include "ctcdec/utf8.h"

namespace ctcdec {

using LmState = int64_t;

inline constexpr char32_t kSpaceChar = U' ';
inline constexpr char32_t kUnknownChar = kReplacementChar;

struct LmStep {
  double log_prob;  // natural log
  LmState next;
};

class CharLmSession {
 public:
  virtual ~CharLmSession() = default;
  // State after the sentence-start symbol.
  virtual LmState Start() = 0;
  virtual LmStep Score(LmState state, char32_t c) = 0;
  // Natural-log probability of ending the sentence; throws kUnsupported for
  // models that have no end symbol.
  virtual double EndOfSentence(LmState state) = 0;
  // Whether the model can score the space character.
  virtual bool HasSpace() const { return true; }
  virtual void Close() {}
};

class CharLm {
 public:
  virtual ~CharLm() = default;
  virtual std::unique_ptr<CharLmSession> OpenSession() const = 0;
  // Whether the model can score the space character.
  virtual bool HasSpace() const = 0;
};

// The n-gram model maps characters to tokens: ' ' is "<sp>", unknown
// characters are "<unk>", everything else is its UTF-8 spelling.
std::string CharToken(char32_t c);
std::vector<std::string> CharTokens(std::string_view line);

// Alphabet symbol -> LM character: "<sp>" is ' ', a single UTF-8 character
// is itself, anything else (e.g. a phone name) is kUnknownChar.
char32_t SymbolCodepoint(std::string_view symbol);

class NGramCharLm : public CharLm {
 public:
  explicit NGramCharLm(NGramLm lm) : lm_(std::move(lm)) {}
  std::unique_ptr<CharLmSession> OpenSession() const override;
  bool HasSpace() const override { return lm_.Find("<sp>").has_value(); }
  const NGramLm& model() const { return lm_; }

 private:
  NGramLm lm_;
};

// P(c) = 1/num_symbols for every character and for the end of the sentence.
class UniformCharLm : public CharLm {
 public:
  explicit UniformCharLm(int num_symbols);
  std::unique_ptr<CharLmSession> OpenSession() const override;
  bool HasSpace() const override { return true; }

 private:
  int num_symbols_;
};

// Line protocol spoken with an external process over its stdin/stdout:
//   INIT <alphabet-size>           -> OK <state0-id>
//   SCORE <state-id> <hex-cp>      -> OK <log10-prob> <next-state-id>
//   FREE <state-id>                -> OK
// Any "ERR <msg>" reply, malformed reply, exit or timeout raises kSession.
class ExternalLmSession : public CharLmSession {
 public:
  ExternalLmSession(const std::string& command, int alphabet_size,
                    std::chrono::milliseconds timeout);
  ~ExternalLmSession() override;
  ExternalLmSession(const ExternalLmSession&) = delete;
  ExternalLmSession& operator=(const ExternalLmSession&) = delete;

  LmState Start() override { return start_; }
  LmStep Score(LmState state, char32_t c) override;
  double EndOfSentence(LmState state) override;
  // Frees every live handle and waits for the process to exit.
  void Close() override;
  // Handles received from the process and not yet freed.
  size_t live_handles() const { return live_.size(); }
  // Releases one handle early (drops any cached steps leaving it).
  void Free(LmState state);

 private:
  std::string Request(const std::string& line);
  std::string ReadLine(const std::string& request);
  void Abort();

  int fd_ = -1;
  int pid_ = -1;
  std::chrono::milliseconds timeout_;
  std::string buffer_;
  LmState start_ = 0;
  std::set<LmState> live_;
  std::map<std::pair<LmState, char32_t>, LmStep> cache_;
  bool closed_ = false;
};

class ExternalCharLm : public CharLm {
 public:
  ExternalCharLm(std::string command, int alphabet_size,
                 std::chrono::milliseconds timeout = std::chrono::seconds(10))
      : command_(std::move(command)), alphabet_size_(alphabet_size),
        timeout_(timeout) {}
  std::unique_ptr<CharLmSession> OpenSession() const override;
  bool HasSpace() const override { return true; }

 private:
  std::string command_;
  int alphabet_size_;
  std::chrono::milliseconds timeout_;
};

struct CharLmTrainOptions {
  int order = 7;
  double discount = 0.75;
  // Sentences are cut to this many characters.
  int max_length = 128;
  // Characters that should be in the vocabulary even if unseen.
  std::vector<char32_t> extra_chars;
};

NGramLm TrainCharNGram(const std::vector<std::string>& lines,
                       const CharLmTrainOptions& options);

// -(1/N) sum log2 P(c_i | history) over every character and every end of
// sentence; N counts both. Throws kInvalidInput for empty text.
double BitsPerCharacter(const CharLm& lm, const std::vector<std::string>& lines);

}  // namespace ctcdec
