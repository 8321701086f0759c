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

// Runs the ctc binary end to end. One demo run with --work-dir supplies the
// artifacts every other subcommand is exercised on.

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "ctcdec/io.h"
#include "test_util.h"

namespace ctcdec {
namespace {

using testing::CommandResult;
using testing::RunCommand;

CommandResult Ctc(const std::string& args) {
  return RunCommand(std::string(CTC_BINARY) + " " + args);
}

std::string Q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir();
    auto r = Ctc("demo --work-dir " + Q(work()));
    ASSERT_EQ(r.exit_code, 0) << r.err;
    demo_stdout_ = new std::string(r.out);
    WriteStringToFile(*dir_ / "ab.txt", "<blk>\na\nb\n");
    WritePosteriorFile(*dir_ / "fixture.ctcp",
                       PosteriorMatrix::FromProbabilities(
                           3, 3, std::vector<double>{0.6, 0.3, 0.1, 0.2, 0.5, 0.3, 0.7, 0.2,
                                                     0.1}));
  }
  static void TearDownTestSuite() {
    delete dir_;
    delete demo_stdout_;
  }

  static std::filesystem::path work() { return *dir_ / "work"; }
  static std::filesystem::path tmp(const std::string& name) { return *dir_ / name; }
  static std::string W(const std::string& name) { return Q(work() / name); }

  static testing::TempDir* dir_;
  static std::string* demo_stdout_;
};

testing::TempDir* CliTest::dir_ = nullptr;
std::string* CliTest::demo_stdout_ = nullptr;

TEST_F(CliTest, DemoPrintsTheGoldenReport) {
  EXPECT_EQ(*demo_stdout_,
            ReadFileToString(std::filesystem::path(TEST_DATA_DIR) / "demo_golden.txt"));
}

TEST_F(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(Ctc("--help").exit_code, 0);
  auto none = Ctc("");
  EXPECT_EQ(none.exit_code, 2);
  EXPECT_EQ(none.err.rfind("error: usage: ", 0), 0u) << none.err;
  auto unknown = Ctc("demo --bogus");
  EXPECT_EQ(unknown.exit_code, 2);
  EXPECT_EQ(std::count(unknown.err.begin(), unknown.err.end(), '\n'), 1);
  EXPECT_EQ(Ctc("--threads 0 demo").exit_code, 2);
  EXPECT_EQ(Ctc("decode greedy --alphabet x").exit_code, 2);  // no --post/--manifest
}

TEST_F(CliTest, GreedyDecodesTheFixture) {
  auto r = Ctc("decode greedy --post " + Q(tmp("fixture.ctcp")) + " --alphabet " +
               Q(tmp("ab.txt")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "fixture\ta\n");
}

TEST_F(CliTest, ScoreSeqPrintsTheForwardProbability) {
  auto r = Ctc("score-seq --post " + Q(tmp("fixture.ctcp")) + " --alphabet " +
               Q(tmp("ab.txt")) + " --text a");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NEAR(std::stod(r.out), std::log(0.471), 1e-6);
  auto symbols = Ctc("score-seq --post " + Q(tmp("fixture.ctcp")) + " --alphabet " +
                     Q(tmp("ab.txt")) + " --symbols 'a'");
  EXPECT_EQ(symbols.out, r.out);
}

TEST_F(CliTest, CorruptPosteriorNamesTheByteOffset) {
  std::string bytes = ReadFileToString(tmp("fixture.ctcp"));
  WriteStringToFile(tmp("bad_magic.ctcp"), "XTCP" + bytes.substr(4));
  auto r = Ctc("decode greedy --post " + Q(tmp("bad_magic.ctcp")) + " --alphabet " +
               Q(tmp("ab.txt")));
  EXPECT_EQ(r.exit_code, 4);
  EXPECT_EQ(r.err.rfind("error: format: ", 0), 0u) << r.err;
  EXPECT_NE(r.err.find("byte offset 0"), std::string::npos) << r.err;

  WriteStringToFile(tmp("short.ctcp"), bytes.substr(0, bytes.size() - 2));
  r = Ctc("decode greedy --post " + Q(tmp("short.ctcp")) + " --alphabet " + Q(tmp("ab.txt")));
  EXPECT_EQ(r.exit_code, 4);
  EXPECT_NE(r.err.find("byte offset"), std::string::npos) << r.err;
}

TEST_F(CliTest, ErrorClassesHaveDistinctExitCodes) {
  const std::string post = " --post " + Q(tmp("fixture.ctcp"));
  // io
  auto io = Ctc("decode greedy --post /nonexistent.ctcp --alphabet " + Q(tmp("ab.txt")));
  EXPECT_EQ(io.exit_code, 3);
  EXPECT_EQ(io.err.rfind("error: io: ", 0), 0u) << io.err;
  // invalid input: alphabet size differs from the posterior
  WriteStringToFile(tmp("abc.txt"), "<blk>\na\nb\nc\n");
  auto invalid = Ctc("decode greedy" + post + " --alphabet " + Q(tmp("abc.txt")));
  EXPECT_EQ(invalid.exit_code, 5) << invalid.err;
  // config
  auto config = Ctc("decode wfst" + post + " --graph " + W("graph.fst") + " --prior " +
                    W("prior.txt") + " --beam -1");
  EXPECT_EQ(config.exit_code, 6) << config.err;
  // build: a lexicon unit missing from the alphabet
  WriteStringToFile(tmp("bad_lexicon.txt"), "cat\tc a t\n");
  auto build = Ctc("build-graph --alphabet " + Q(tmp("ab.txt")) + " --lexicon " +
                   Q(tmp("bad_lexicon.txt")) + " --arpa " + W("word.arpa") + " --out " +
                   Q(tmp("never.fst")));
  EXPECT_EQ(build.exit_code, 8) << build.err;
  EXPECT_EQ(build.err.rfind("error: build: ", 0), 0u) << build.err;
  // session: the external LM program cannot be started
  auto session = Ctc("decode beam" + post + " --alphabet " + Q(tmp("ab.txt")) +
                     " --external-lm /nonexistent/lm");
  EXPECT_EQ(session.exit_code, 9) << session.err;
}

TEST_F(CliTest, DecodersReproduceTheDemoTranscripts) {
  const std::string manifest = " --manifest " + W("manifest.txt");
  auto greedy = Ctc("decode greedy" + manifest + " --alphabet " + W("alphabet.txt"));
  ASSERT_EQ(greedy.exit_code, 0) << greedy.err;
  EXPECT_EQ(greedy.out, ReadFileToString(work() / "hyp_greedy.txt"));

  auto beam = Ctc("decode beam" + manifest + " --alphabet " + W("alphabet.txt") +
                  " --charlm " + W("char.arpa") + " --beam 32 --bonus 2.5");
  ASSERT_EQ(beam.exit_code, 0) << beam.err;
  EXPECT_EQ(beam.out, ReadFileToString(work() / "hyp_beam.txt"));

  auto wfst = Ctc("decode wfst" + manifest + " --graph " + W("graph.fst") + " --prior " +
                  W("prior.txt"));
  ASSERT_EQ(wfst.exit_code, 0) << wfst.err;
  EXPECT_EQ(wfst.out, ReadFileToString(work() / "hyp_wfst.txt"));
}

TEST_F(CliTest, OutputIsIdenticalAcrossThreadCounts) {
  const std::string manifest = " --manifest " + W("manifest.txt");
  const std::string commands[] = {
      "decode greedy" + manifest + " --alphabet " + W("alphabet.txt"),
      "decode beam" + manifest + " --alphabet " + W("alphabet.txt") + " --charlm " +
          W("char.arpa") + " --beam 8 --nbest 3",
      "decode wfst" + manifest + " --graph " + W("graph.fst") + " --prior " + W("prior.txt"),
  };
  for (const auto& command : commands) {
    auto one = Ctc("--threads 1 " + command);
    ASSERT_EQ(one.exit_code, 0) << one.err;
    EXPECT_EQ(Ctc("--threads 4 " + command).out, one.out) << command;
    EXPECT_EQ(Ctc("--threads 3 " + command).out, one.out) << command;
    EXPECT_EQ(RunCommand("CTC_THREADS=2 " + std::string(CTC_BINARY) + " " + command).out,
              one.out);
  }
  EXPECT_EQ(Ctc("--threads 4 demo").out, *demo_stdout_);
}

TEST_F(CliTest, NBestLinesCarryScores) {
  auto r = Ctc("decode beam --post " + Q(tmp("fixture.ctcp")) + " --alphabet " +
               Q(tmp("ab.txt")) + " --external-lm '" + std::string(FAKE_LM_BINARY) +
               " uniform 3' --nbest 2");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto lines = SplitLines(r.out);
  ASSERT_GE(lines.size(), 2u);
  EXPECT_EQ(lines[0].rfind("fixture\t", 0), 0u);
  EXPECT_EQ(std::count(lines[0].begin(), lines[0].end(), '\t'), 2);
}

TEST_F(CliTest, TrainingAndGraphBuildingMatchTheDemoArtifacts) {
  auto word = Ctc("train-wordlm --corpus " + Q(std::filesystem::path(DEMO_DATA_DIR) /
                                               "train.txt") +
                  " --order 3 --out " + Q(tmp("word.arpa")));
  ASSERT_EQ(word.exit_code, 0) << word.err;
  EXPECT_EQ(ReadFileToString(tmp("word.arpa")), ReadFileToString(work() / "word.arpa"));

  auto graph = Ctc("build-graph --alphabet " + W("alphabet.txt") + " --lexicon " +
                   W("lexicon.txt") + " --arpa " + Q(tmp("word.arpa")) + " --out " +
                   Q(tmp("graph.fst")));
  ASSERT_EQ(graph.exit_code, 0) << graph.err;
  // The demo composes from the in-memory model, this graph from its ARPA text,
  // so weights may differ in the last bits; the decisions must not.
  auto wfst = Ctc("decode wfst --manifest " + W("manifest.txt") + " --graph " +
                  Q(tmp("graph.fst")) + " --prior " + W("prior.txt"));
  ASSERT_EQ(wfst.exit_code, 0) << wfst.err;
  EXPECT_EQ(wfst.out, ReadFileToString(work() / "hyp_wfst.txt"));

  auto chars = Ctc("train-charlm --corpus " +
                   Q(std::filesystem::path(DEMO_DATA_DIR) / "train.txt") + " --order 3 --out " +
                   Q(tmp("char3.arpa")));
  ASSERT_EQ(chars.exit_code, 0) << chars.err;
  EXPECT_NE(ReadFileToString(tmp("char3.arpa")).find("ngram 3="), std::string::npos);
}

TEST_F(CliTest, EstimatePriorsWritesOneLogPerLabel) {
  auto r = Ctc("estimate-priors --manifest " + W("manifest.txt") + " --out " +
               Q(tmp("prior.txt")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto lines = SplitLines(ReadFileToString(tmp("prior.txt")));
  auto alphabet = SplitLines(ReadFileToString(work() / "alphabet.txt"));
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  while (!alphabet.empty() && alphabet.back().empty()) alphabet.pop_back();
  ASSERT_EQ(lines.size(), alphabet.size());
  double total = 0.0;
  for (const auto& l : lines) total += std::exp(std::stod(l));
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST_F(CliTest, ScoreMatchesTheDemoRow) {
  auto r = Ctc("score --ref " + W("ref.txt") + " --hyp " + W("hyp_greedy.txt") +
               " --name greedy --vocab " + Q(std::filesystem::path(DEMO_DATA_DIR) / "train.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto row = SplitLines(r.out).at(1);
  EXPECT_NE(demo_stdout_->find(row), std::string::npos) << row;

  auto json = Ctc("score --json --per-utt --ref " + W("ref.txt") + " --hyp " +
                  W("hyp_wfst.txt"));
  ASSERT_EQ(json.exit_code, 0) << json.err;
  EXPECT_NE(json.out.find("\"per_utterance\""), std::string::npos);

  WriteStringToFile(tmp("stray.txt"), "nosuchutt\thello\n");
  EXPECT_EQ(Ctc("score --ref " + W("ref.txt") + " --hyp " + Q(tmp("stray.txt"))).exit_code, 5);
}

TEST_F(CliTest, SeedChangesTheDemoNoise) {
  auto other = Ctc("--seed 99 demo");
  ASSERT_EQ(other.exit_code, 0) << other.err;
  EXPECT_NE(other.out, *demo_stdout_);
  EXPECT_EQ(Ctc("--seed 99 demo").out, other.out);
}

}  // namespace
}  // namespace ctcdec
