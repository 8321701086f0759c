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

// Multi-utterance decoding. Work is spread over utterances; every result
// lands in its input slot, so output order never depends on the thread count.

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace ctcdec {

struct ManifestEntry {
  std::string id;
  std::filesystem::path path;
};

// `UTTID<TAB>path` per line; relative paths resolve against the manifest's
// directory.
std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path);

// results[i] = fn(i) for i in [0, n), on up to `num_threads` OpenMP threads
// (<= 0 uses the runtime default). If any call throws, the exception from the
// lowest index is rethrown after all calls finish.
std::vector<std::string> BatchMap(size_t n,
                                  const std::function<std::string(size_t)>& fn,
                                  int num_threads);

namespace serial {

std::vector<std::string> BatchMap(size_t n,
                                  const std::function<std::string(size_t)>& fn);

}  // namespace serial
}  // namespace ctcdec
