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

#include <random>

#include <gtest/gtest.h>

#include "ctcdec/batch.h"
#include "ctcdec/common.h"
#include "ctcdec/greedy.h"
#include "ctcdec/io.h"
#include "test_util.h"

namespace ctcdec {
namespace {

using testing::ThrownKind;

TEST(BatchMapTest, ParallelMatchesSerialInOrder) {
  std::mt19937_64 rng(101);
  Alphabet alphabet = testing::LetterAlphabet(6);
  std::vector<PosteriorMatrix> inputs;
  for (int i = 0; i < 64; ++i) {
    inputs.push_back(testing::RandomPosteriors(5 + static_cast<int>(rng() % 40), 6, rng));
  }
  auto decode = [&](size_t i) {
    return std::to_string(i) + "\t" + RenderText(GreedyDecode(inputs[i], alphabet), alphabet);
  };
  auto expected = serial::BatchMap(inputs.size(), decode);
  for (int threads : {1, 2, 3, 8, 0}) {
    EXPECT_EQ(BatchMap(inputs.size(), decode, threads), expected) << threads << " threads";
  }
  EXPECT_TRUE(BatchMap(0, decode, 4).empty());
}

TEST(BatchMapTest, RethrowsTheLowestFailingIndex) {
  auto fn = [](size_t i) -> std::string {
    if (i == 7) throw Error(ErrorKind::kIo, "seven");
    if (i == 3) throw Error(ErrorKind::kParse, "three");
    return "ok";
  };
  for (int threads : {1, 4}) {
    try {
      BatchMap(20, fn, threads);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse);
      EXPECT_STREQ(e.what(), "three");
    }
  }
  EXPECT_EQ(ThrownKind([&] { serial::BatchMap(20, fn); }), ErrorKind::kParse);
}

TEST(ManifestTest, RelativePathsResolveAgainstTheManifest) {
  testing::TempDir dir;
  std::filesystem::create_directories(dir / "sub");
  WriteStringToFile(dir / "sub" / "list.tsv", "u1\ta.ctcp\nu2\t/abs/b.ctcp\n\nu3\tdeep/c.ctcp\n");
  auto entries = ReadManifest(dir / "sub" / "list.tsv");
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].id, "u1");
  EXPECT_EQ(entries[0].path, dir / "sub" / "a.ctcp");
  EXPECT_EQ(entries[1].path, std::filesystem::path("/abs/b.ctcp"));
  EXPECT_EQ(entries[2].path, dir / "sub" / "deep" / "c.ctcp");
}

TEST(ManifestTest, Errors) {
  testing::TempDir dir;
  WriteStringToFile(dir / "dup.tsv", "u1\ta\nu1\tb\n");
  EXPECT_EQ(ThrownKind([&] { ReadManifest(dir / "dup.tsv"); }), ErrorKind::kParse);
  WriteStringToFile(dir / "nopath.tsv", "u1\n");
  EXPECT_EQ(ThrownKind([&] { ReadManifest(dir / "nopath.tsv"); }), ErrorKind::kParse);
  EXPECT_EQ(ThrownKind([&] { ReadManifest(dir / "missing.tsv"); }), ErrorKind::kIo);
}

}  // namespace
}  // namespace ctcdec
