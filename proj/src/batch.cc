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

#include "ctcdec/batch.h"

#include <exception>

#include <omp.h>

#include "ctcdec/common.h"
#include "ctcdec/io.h"

namespace ctcdec {

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path) {
  const std::string text = ReadFileToString(path);
  std::vector<ManifestEntry> out;
  for (auto& [id, value] : ParseKeyedLines(text, path.string())) {
    if (value.empty()) {
      throw ParseError(ParseErrorCode::kBadLine,
                       path.string() + ": utterance " + id + " has no posterior path");
    }
    std::filesystem::path p(value);
    if (p.is_relative()) p = path.parent_path() / p;
    out.push_back({id, p});
  }
  return out;
}

std::vector<std::string> BatchMap(size_t n,
                                  const std::function<std::string(size_t)>& fn,
                                  int num_threads) {
  std::vector<std::string> results(n);
  std::vector<std::exception_ptr> errors(n);
  const int threads = num_threads > 0 ? num_threads : omp_get_max_threads();
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < count; ++i) {
    try {
      results[i] = fn(static_cast<size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

namespace serial {

std::vector<std::string> BatchMap(size_t n,
                                  const std::function<std::string(size_t)>& fn) {
  std::vector<std::string> results;
  results.reserve(n);
  for (size_t i = 0; i < n; ++i) results.push_back(fn(i));
  return results;
}

}  // namespace serial
}  // namespace ctcdec
