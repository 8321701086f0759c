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

// Shared fixtures for the test binaries.

#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ctcdec/alphabet.h"
#include "ctcdec/common.h"
#include "ctcdec/posterior.h"

namespace ctcdec::testing {

inline double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random rows; `sharpness` > 1 makes rows peakier. Every entry is positive.
inline PosteriorMatrix RandomPosteriors(int T, int K, std::mt19937_64& rng,
                                        double sharpness = 1.0) {
  std::vector<double> probs(static_cast<size_t>(T) * K);
  for (int t = 0; t < T; ++t) {
    double sum = 0.0;
    for (int k = 0; k < K; ++k) {
      double v = std::pow(Uniform01(rng) + 1e-3, sharpness);
      probs[t * K + k] = v;
      sum += v;
    }
    for (int k = 0; k < K; ++k) probs[t * K + k] /= sum;
  }
  return PosteriorMatrix::FromProbabilities(T, K, probs);
}

// Alphabet <blk>, a, b, c, ... with `num_labels` entries in total.
inline Alphabet LetterAlphabet(int num_labels) {
  std::vector<std::string> labels;
  for (int k = 1; k < num_labels; ++k) labels.emplace_back(1, static_cast<char>('a' + k - 1));
  return Alphabet::FromLabels(labels);
}

// Every sequence over [0, base) of length `length`, in lexicographic order.
inline std::vector<std::vector<int>> AllSequences(int length, int base) {
  std::vector<std::vector<int>> out;
  std::vector<int> seq(length, 0);
  while (true) {
    out.push_back(seq);
    int i = length - 1;
    while (i >= 0 && ++seq[i] == base) seq[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// Kind of the Error thrown by `f`, or kInternal when nothing is thrown.
template <typename F>
ErrorKind ThrownKind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInternal;
}

class TempDir {
 public:
  TempDir() {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "ctcdec_test_XXXXXX").string();
    path_ = mkdtemp(pattern.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs `command` through the shell, capturing stdout and stderr.
inline CommandResult RunCommand(const std::string& command) {
  TempDir dir;
  const auto out_path = dir / "stdout";
  const auto err_path = dir / "stderr";
  const std::string full =
      command + " >" + out_path.string() + " 2>" + err_path.string();
  int status = std::system(full.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

}  // namespace ctcdec::testing
