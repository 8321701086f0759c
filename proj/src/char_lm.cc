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

#include "ctcdec/char_lm.h"

#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ctcdec/common.h"

namespace ctcdec {
namespace {

constexpr double kLn10 = std::numbers::ln10;

class NGramSession : public CharLmSession {
 public:
  explicit NGramSession(const NGramLm& lm) : lm_(lm) {}

  LmState Start() override { return Intern({lm_.bos()}); }

  LmStep Score(LmState state, char32_t c) override {
    std::vector<int> context = contexts_.at(state);
    int id = lm_.Id(CharToken(c));
    double lp = lm_.Log10Prob(context, id) * kLn10;
    context.push_back(id);
    const size_t keep = static_cast<size_t>(lm_.order() - 1);
    if (context.size() > keep) context.erase(context.begin(), context.end() - keep);
    return {lp, Intern(std::move(context))};
  }

  double EndOfSentence(LmState state) override {
    return lm_.Log10Prob(contexts_.at(state), lm_.eos()) * kLn10;
  }

  bool HasSpace() const override { return lm_.Find("<sp>").has_value(); }

 private:
  LmState Intern(std::vector<int> context) {
    auto [it, inserted] =
        index_.emplace(context, static_cast<LmState>(contexts_.size()));
    if (inserted) contexts_.push_back(std::move(context));
    return it->second;
  }

  const NGramLm& lm_;
  std::vector<std::vector<int>> contexts_;
  std::unordered_map<std::vector<int>, LmState, NGramHash> index_;
};

class UniformSession : public CharLmSession {
 public:
  explicit UniformSession(int num_symbols)
      : log_prob_(-std::log(static_cast<double>(num_symbols))) {}
  LmState Start() override { return 0; }
  LmStep Score(LmState, char32_t) override { return {log_prob_, 0}; }
  double EndOfSentence(LmState) override { return log_prob_; }

 private:
  double log_prob_;
};

template <typename T>
bool ParseField(std::string_view field, T& value) {
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  return ec == std::errc() && ptr == field.data() + field.size();
}

std::vector<std::string_view> SplitSpaces(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    size_t j = line.find(' ', i);
    if (j == std::string_view::npos) j = line.size();
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

}  // namespace

std::string CharToken(char32_t c) {
  if (c == kSpaceChar) return "<sp>";
  if (c == kUnknownChar) return std::string(NGramLm::kUnk);
  return EncodeUtf8(c);
}

std::vector<std::string> CharTokens(std::string_view line) {
  std::vector<std::string> tokens;
  for (char32_t c : DecodeUtf8(line)) tokens.push_back(CharToken(c));
  return tokens;
}

char32_t SymbolCodepoint(std::string_view symbol) {
  if (symbol == "<sp>") return kSpaceChar;
  auto cps = DecodeUtf8(symbol);
  return cps.size() == 1 ? cps[0] : kUnknownChar;
}

std::unique_ptr<CharLmSession> NGramCharLm::OpenSession() const {
  return std::make_unique<NGramSession>(lm_);
}

UniformCharLm::UniformCharLm(int num_symbols) : num_symbols_(num_symbols) {
  if (num_symbols < 1) {
    throw Error(ErrorKind::kConfig, "uniform LM needs at least one symbol");
  }
}

std::unique_ptr<CharLmSession> UniformCharLm::OpenSession() const {
  return std::make_unique<UniformSession>(num_symbols_);
}

std::unique_ptr<CharLmSession> ExternalCharLm::OpenSession() const {
  return std::make_unique<ExternalLmSession>(command_, alphabet_size_, timeout_);
}

// ---------------------------------------------------------------------------
// External process session.

ExternalLmSession::ExternalLmSession(const std::string& command,
                                     int alphabet_size,
                                     std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  int fds[2];
  if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
    throw Error(ErrorKind::kSession, "external LM: socketpair failed");
  }
  pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw Error(ErrorKind::kSession, "external LM: fork failed");
  }
  if (pid == 0) {
    dup2(fds[1], STDIN_FILENO);
    dup2(fds[1], STDOUT_FILENO);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(fds[1]);
  fd_ = fds[0];
  pid_ = pid;

  std::string request = "INIT " + std::to_string(alphabet_size);
  std::string reply = Request(request);
  auto fields = SplitSpaces(reply);
  if (fields.size() != 2 || !ParseField(fields[1], start_)) {
    Abort();
    throw Error(ErrorKind::kSession, "external LM protocol error: malformed reply '" +
                                         reply + "' to '" + request + "'");
  }
  live_.insert(start_);
}

ExternalLmSession::~ExternalLmSession() {
  try {
    Close();
  } catch (...) {
    Abort();
  }
}

void ExternalLmSession::Abort() {
  if (fd_ >= 0) {
    close(fd_);
    fd_ = -1;
  }
  if (pid_ > 0) {
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
  live_.clear();
  cache_.clear();
  closed_ = true;
}

std::string ExternalLmSession::ReadLine(const std::string& request) {
  auto deadline = std::chrono::steady_clock::now() + timeout_;
  while (true) {
    size_t newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    pollfd pfd{fd_, POLLIN, 0};
    int ready = remaining.count() > 0
                    ? poll(&pfd, 1, static_cast<int>(remaining.count()))
                    : 0;
    if (ready == 0) {
      Abort();
      throw Error(ErrorKind::kSession,
                  "external LM timed out answering '" + request + "'");
    }
    char chunk[4096];
    ssize_t n = ready > 0 ? read(fd_, chunk, sizeof(chunk)) : -1;
    if (n <= 0) {
      Abort();
      throw Error(ErrorKind::kSession,
                  "external LM exited while answering '" + request + "'");
    }
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

std::string ExternalLmSession::Request(const std::string& line) {
  if (closed_ || fd_ < 0) {
    throw Error(ErrorKind::kSession, "external LM session is closed");
  }
  std::string message = line + "\n";
  size_t sent = 0;
  while (sent < message.size()) {
    ssize_t n = send(fd_, message.data() + sent, message.size() - sent,
                     MSG_NOSIGNAL);
    if (n <= 0) {
      Abort();
      throw Error(ErrorKind::kSession, "external LM exited before '" + line + "'");
    }
    sent += static_cast<size_t>(n);
  }
  std::string reply = ReadLine(line);
  if (reply.rfind("ERR", 0) == 0) {
    Abort();
    throw Error(ErrorKind::kSession,
                "external LM error on '" + line + "': " + reply);
  }
  if (reply != "OK" && reply.rfind("OK ", 0) != 0) {
    Abort();
    throw Error(ErrorKind::kSession, "external LM protocol error: malformed reply '" +
                                         reply + "' to '" + line + "'");
  }
  return reply;
}

LmStep ExternalLmSession::Score(LmState state, char32_t c) {
  if (auto it = cache_.find({state, c}); it != cache_.end()) return it->second;
  char hex[16];
  std::snprintf(hex, sizeof(hex), "%x", static_cast<unsigned>(c));
  std::string request = "SCORE " + std::to_string(state) + " " + hex;
  std::string reply = Request(request);
  auto fields = SplitSpaces(reply);
  double log10_prob = 0.0;
  LmState next = 0;
  if (fields.size() != 3 || !ParseField(fields[1], log10_prob) ||
      !ParseField(fields[2], next) || std::isnan(log10_prob) || log10_prob > 0.0) {
    Abort();
    throw Error(ErrorKind::kSession, "external LM protocol error: malformed reply '" +
                                         reply + "' to '" + request + "'");
  }
  LmStep step{log10_prob * kLn10, next};
  live_.insert(next);
  cache_.emplace(std::make_pair(state, c), step);
  return step;
}

double ExternalLmSession::EndOfSentence(LmState) {
  throw Error(ErrorKind::kUnsupported,
              "the external LM protocol has no end-of-sentence query");
}

void ExternalLmSession::Free(LmState state) {
  if (!live_.count(state)) return;
  Request("FREE " + std::to_string(state));
  live_.erase(state);
  std::erase_if(cache_, [state](const auto& kv) {
    return kv.first.first == state || kv.second.next == state;
  });
}

void ExternalLmSession::Close() {
  if (closed_) return;
  while (!live_.empty()) Free(*live_.begin());
  shutdown(fd_, SHUT_WR);
  // Give the process a chance to exit on EOF before killing it.
  pollfd pfd{fd_, POLLIN, 0};
  char chunk[256];
  auto deadline = std::chrono::steady_clock::now() + timeout_;
  while (std::chrono::steady_clock::now() < deadline) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (poll(&pfd, 1, static_cast<int>(remaining.count())) <= 0) break;
    if (read(fd_, chunk, sizeof(chunk)) <= 0) break;
  }
  close(fd_);
  fd_ = -1;
  if (pid_ > 0) {
    int status = 0;
    if (waitpid(pid_, &status, WNOHANG) == 0) {
      kill(pid_, SIGKILL);
      waitpid(pid_, &status, 0);
    }
    pid_ = -1;
  }
  cache_.clear();
  closed_ = true;
}

// ---------------------------------------------------------------------------

NGramLm TrainCharNGram(const std::vector<std::string>& lines,
                       const CharLmTrainOptions& options) {
  if (options.max_length < 1) {
    throw Error(ErrorKind::kConfig, "max sentence length must be >= 1");
  }
  std::vector<std::vector<std::string>> sentences;
  for (const auto& line : lines) {
    auto cps = DecodeUtf8(line);
    if (cps.empty()) continue;
    if (cps.size() > static_cast<size_t>(options.max_length)) {
      cps.resize(options.max_length);
    }
    std::vector<std::string> tokens;
    for (char32_t c : cps) tokens.push_back(CharToken(c));
    sentences.push_back(std::move(tokens));
  }
  KneserNeyOptions kn;
  kn.order = options.order;
  kn.discount = options.discount;
  for (char32_t c : options.extra_chars) kn.extra_vocab.push_back(CharToken(c));
  return TrainKneserNey(sentences, kn);
}

double BitsPerCharacter(const CharLm& lm, const std::vector<std::string>& lines) {
  auto session = lm.OpenSession();
  double bits = 0.0;
  size_t count = 0;
  for (const auto& line : lines) {
    if (line.empty()) continue;
    LmState state = session->Start();
    for (char32_t c : DecodeUtf8(line)) {
      LmStep step = session->Score(state, c);
      bits -= step.log_prob / std::numbers::ln2;
      state = step.next;
      ++count;
    }
    bits -= session->EndOfSentence(state) / std::numbers::ln2;
    ++count;
  }
  session->Close();
  if (count == 0) {
    throw Error(ErrorKind::kInvalidInput, "cannot compute BPC of empty text");
  }
  return bits / static_cast<double>(count);
}

}  // namespace ctcdec
