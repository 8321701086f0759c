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

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace ctcdec {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) with -inf as the additive identity.
inline double LogAdd(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

inline double LogSumExp(std::span<const double> values) {
  double max_value = kLogZero;
  for (double v : values) max_value = std::max(max_value, v);
  if (max_value == kLogZero) return kLogZero;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max_value);
  return max_value + std::log(sum);
}

// Error classes map one-to-one onto CLI exit codes (see ExitCode()).
enum class ErrorKind {
  kInternal,
  kUsage,
  kIo,
  kParse,
  kInvalidInput,
  kConfig,
  kCapacity,
  kBuild,
  kSession,
  kUnsupported,
};

const char* ErrorKindName(ErrorKind kind);
int ExitCode(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Structural problems in an input file. Every parse error carries a code so
// callers can tell a bad magic number from a truncated payload.
enum class ParseErrorCode {
  kBadMagic,
  kBadVersion,
  kTruncated,
  kTrailingData,
  kUnnormalized,
  kBadValue,
  kMissingBlank,
  kDuplicateSymbol,
  kEmptySymbol,
  kBadLine,
  kMissingSection,
  kCountMismatch,
};

const char* ParseErrorCodeName(ParseErrorCode code);

class ParseError : public Error {
 public:
  ParseError(ParseErrorCode code, const std::string& message)
      : Error(ErrorKind::kParse,
              std::string(ParseErrorCodeName(code)) + ": " + message),
        code_(code) {}
  ParseErrorCode code() const { return code_; }

 private:
  ParseErrorCode code_;
};

}  // namespace ctcdec
