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

#include "demo.h"

#include <cstdio>
#include <set>
#include <sstream>

#include "ctcdec/batch.h"
#include "ctcdec/beam.h"
#include "ctcdec/char_lm.h"
#include "ctcdec/greedy.h"
#include "ctcdec/io.h"
#include "ctcdec/kernels.h"
#include "ctcdec/wfst.h"
#include "ctcdec/word_lm.h"

namespace ctcdec::demo {
namespace {

constexpr size_t kPriorUtterances = 60;

// Fills `row` with `peak` on `target`, `blank` on the blank and the rest
// spread evenly; `second` optionally takes `second_mass` out of the spread.
void FillRow(std::vector<double>& probs, int t, int K, int target, double peak,
             int second = -1, double second_mass = 0.0) {
  double* row = probs.data() + static_cast<size_t>(t) * K;
  int others = K - 1 - (second >= 0 ? 1 : 0);
  double rest = (1.0 - peak - second_mass) / others;
  for (int k = 0; k < K; ++k) row[k] = rest;
  row[target] = peak;
  if (second >= 0) row[second] = second_mass;
}

std::string JoinLines(const Transcripts& lines) {
  std::string out;
  for (const auto& [id, text] : lines) out += id + "\t" + text + "\n";
  return out;
}

}  // namespace

double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Alphabet DemoAlphabet() {
  std::vector<std::string> labels;
  for (char c = 'a'; c <= 'z'; ++c) labels.emplace_back(1, c);
  labels.emplace_back(Alphabet::kSpaceSymbol);
  return Alphabet::FromLabels(labels);
}

std::vector<int> TextToLabels(const std::string& text, const Alphabet& alphabet) {
  std::vector<int> labels;
  for (char c : text) {
    auto id = c == ' ' ? alphabet.space_index() : alphabet.Find(std::string(1, c));
    if (!id) {
      throw Error(ErrorKind::kInvalidInput,
                  std::string("character '") + c + "' is not in the demo alphabet");
    }
    labels.push_back(*id);
  }
  return labels;
}

PosteriorMatrix SynthesizePosteriors(const std::vector<int>& labels,
                                     int num_labels, std::mt19937_64& rng,
                                     const NoiseConfig& noise) {
  const int K = num_labels;
  // (target, confuser) per frame; a confuser of -1 means a clean frame.
  std::vector<std::pair<int, int>> frames = {{Alphabet::kBlank, -1}};
  for (size_t i = 0; i < labels.size(); ++i) {
    const int c = labels[i];
    int confuser = -1;
    if (Uniform(rng) < noise.confusion_rate) {
      confuser = 1 + static_cast<int>(Uniform(rng) * (K - 2));
      if (confuser >= c) ++confuser;
    }
    const int duration = 1 + static_cast<int>(Uniform(rng) * 2);
    for (int d = 0; d < duration; ++d) frames.emplace_back(c, confuser);
    const bool repeat_next = i + 1 < labels.size() && labels[i + 1] == c;
    if (repeat_next || Uniform(rng) < 0.5) frames.emplace_back(Alphabet::kBlank, -1);
  }
  frames.emplace_back(Alphabet::kBlank, -1);

  const int T = static_cast<int>(frames.size());
  std::vector<double> probs(static_cast<size_t>(T) * K);
  for (int t = 0; t < T; ++t) {
    auto [target, confuser] = frames[t];
    if (target == Alphabet::kBlank) {
      FillRow(probs, t, K, Alphabet::kBlank, noise.blank_peak);
    } else if (confuser < 0) {
      FillRow(probs, t, K, target, noise.clean_peak);
    } else {
      FillRow(probs, t, K, confuser, noise.confused_peak, target, noise.confused_true);
    }
  }
  return PosteriorMatrix::FromProbabilities(T, K, probs);
}

DemoResult RunDemo(const DemoOptions& options) {
  const auto train = SplitLines(ReadFileToString(options.data_dir / "train.txt"));
  std::vector<std::string> train_lines;
  for (const auto& line : train) {
    if (!line.empty()) train_lines.push_back(line);
  }
  DemoResult result;
  result.reference = ParseKeyedLines(
      ReadFileToString(options.data_dir / "test.txt"), "test.txt");

  const Alphabet alphabet = DemoAlphabet();
  const int K = alphabet.size();

  CharLmTrainOptions char_options;
  char_options.order = options.charlm_order;
  for (char c = 'a'; c <= 'z'; ++c) char_options.extra_chars.push_back(c);
  const NGramCharLm char_lm(TrainCharNGram(train_lines, char_options));
  const NGramLm word_lm = TrainWordNGram(train_lines, options.wordlm_order, 0.75);

  std::vector<LexiconEntry> lexicon;
  for (const auto& word : Vocabulary(word_lm)) {
    LexiconEntry entry{word, {}};
    for (char c : word) entry.units.emplace_back(1, c);
    lexicon.push_back(std::move(entry));
  }
  const Wfst graph = BuildSearchGraph(alphabet, lexicon, word_lm);
  result.graph_states = graph.num_states();
  result.graph_arcs = graph.num_arcs();

  std::mt19937_64 rng(options.seed);
  std::vector<PosteriorMatrix> test_posteriors;
  for (const auto& [id, text] : result.reference) {
    test_posteriors.push_back(SynthesizePosteriors(TextToLabels(text, alphabet), K, rng));
  }
  // Priors come from held-apart training utterances, not the test set.
  std::mt19937_64 prior_rng(options.seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<PosteriorMatrix> prior_posteriors;
  for (size_t i = 0; i < std::min(kPriorUtterances, train_lines.size()); ++i) {
    prior_posteriors.push_back(
        SynthesizePosteriors(TextToLabels(train_lines[i], alphabet), K, prior_rng));
  }
  const PriorVector prior = EstimatePriors(prior_posteriors, kDefaultPriorFloor,
                                           options.threads);

  BeamConfig beam_config;
  beam_config.beam_width = options.beam_width;
  beam_config.insertion_bonus = options.insertion_bonus;
  WfstDecodeConfig wfst_config;

  const size_t n = test_posteriors.size();
  auto greedy = BatchMap(n, [&](size_t i) {
    return RenderText(GreedyDecode(test_posteriors[i], alphabet), alphabet);
  }, options.threads);
  auto beam = BatchMap(n, [&](size_t i) {
    BeamResult r = BeamDecode(test_posteriors[i], alphabet, char_lm, beam_config);
    return RenderText(r.hypotheses.front().prefix, r.alphabet);
  }, options.threads);
  auto wfst = BatchMap(n, [&](size_t i) {
    WfstDecodeResult r = WfstDecode(test_posteriors[i], prior, graph, wfst_config);
    std::string text;
    for (const auto& w : r.words) text += (text.empty() ? "" : " ") + w;
    return text;
  }, options.threads);
  for (size_t i = 0; i < n; ++i) {
    const std::string& id = result.reference[i].first;
    result.greedy.emplace_back(id, greedy[i]);
    result.beam.emplace_back(id, beam[i]);
    result.wfst.emplace_back(id, wfst[i]);
  }

  std::set<std::string> vocabulary;
  for (const auto& e : lexicon) vocabulary.insert(e.word);
  result.compare.systems.push_back(
      ScoreSystem("greedy", result.reference, result.greedy, &vocabulary));
  result.compare.systems.push_back(
      ScoreSystem("beam+charlm", result.reference, result.beam, &vocabulary));
  result.compare.systems.push_back(
      ScoreSystem("wfst", result.reference, result.wfst, &vocabulary));
  std::vector<std::string> test_text;
  for (const auto& [id, text] : result.reference) test_text.push_back(text);
  result.compare.insertion_bonus = options.insertion_bonus;
  result.compare.lm_bpc = BitsPerCharacter(char_lm, test_text);

  if (options.work_dir) {
    const auto& dir = *options.work_dir;
    std::filesystem::create_directories(dir / "post");
    WriteStringToFile(dir / "alphabet.txt", SerializeAlphabet(alphabet));
    WriteStringToFile(dir / "lexicon.txt", SerializeLexicon(lexicon));
    WriteStringToFile(dir / "ref.txt", JoinLines(result.reference));
    WriteArpaFile(dir / "char.arpa", char_lm.model());
    WriteArpaFile(dir / "word.arpa", word_lm);
    WriteWfstFile(dir / "graph.fst", graph);
    WriteStringToFile(dir / "prior.txt", SerializePrior(prior));
    std::string manifest;
    for (size_t i = 0; i < n; ++i) {
      const std::string name = "post/" + result.reference[i].first + ".ctcp";
      WritePosteriorFile(dir / name, test_posteriors[i]);
      manifest += result.reference[i].first + "\t" + name + "\n";
    }
    WriteStringToFile(dir / "manifest.txt", manifest);
    WriteStringToFile(dir / "hyp_greedy.txt", JoinLines(result.greedy));
    WriteStringToFile(dir / "hyp_beam.txt", JoinLines(result.beam));
    WriteStringToFile(dir / "hyp_wfst.txt", JoinLines(result.wfst));
  }

  std::ostringstream out;
  out << "toy corpus: " << train_lines.size() << " training sentences, "
      << result.reference.size() << " test utterances, " << lexicon.size()
      << " words\n";
  out << "char LM order " << options.charlm_order << ", word LM order "
      << options.wordlm_order << ", search graph " << result.graph_states
      << " states / " << result.graph_arcs << " arcs, noise seed "
      << options.seed << "\n\n";
  out << FormatTable(result.compare);
  out << "\nexample (" << result.reference.front().first << ")\n";
  out << "  ref:    " << result.reference.front().second << "\n";
  out << "  greedy: " << result.greedy.front().second << "\n";
  out << "  beam:   " << result.beam.front().second << "\n";
  out << "  wfst:   " << result.wfst.front().second << "\n";
  result.report = out.str();
  return result;
}

}  // namespace ctcdec::demo
