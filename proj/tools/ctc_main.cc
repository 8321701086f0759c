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

// ctc: command-line front end for the decoding toolkit.
//
// Exit codes: 0 success, 1 internal, 2 usage, 3 io, 4 format, 5 invalid
// input, 6 config, 7 capacity, 8 build, 9 session. Failures print one line
// "error: <class>: <message>" on stderr. Global options may also come from
// CTC_THREADS, CTC_SEED and CTC_LOG_LEVEL.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "ctcdec/batch.h"
#include "ctcdec/beam.h"
#include "ctcdec/char_lm.h"
#include "ctcdec/ctc_oracle.h"
#include "ctcdec/greedy.h"
#include "ctcdec/io.h"
#include "ctcdec/kernels.h"
#include "ctcdec/ngram_lm.h"
#include "ctcdec/score.h"
#include "ctcdec/utf8.h"
#include "ctcdec/wfst.h"
#include "ctcdec/word_lm.h"
#include "demo.h"

#ifndef CTCDEC_DEMO_DIR
#define CTCDEC_DEMO_DIR "data/demo"
#endif

namespace ctcdec {
namespace {

struct GlobalOptions {
  int threads = 1;
  uint64_t seed = 1234;
  std::string log_level = "warn";
};

// Utterances named on the command line: one --post file or a --manifest.
struct InputOptions {
  std::string post;
  std::string manifest;

  void Register(CLI::App* app) {
    auto* group = app->add_option_group("input");
    group->add_option("--post", post, "Posterior file (CTCP)");
    group->add_option("--manifest", manifest, "UTTID<TAB>posterior-path lines");
    group->require_option(1);
  }

  std::vector<ManifestEntry> Entries() const {
    if (!manifest.empty()) return ReadManifest(manifest);
    return {{std::filesystem::path(post).stem().string(), post}};
  }
};

std::vector<std::string> ReadTextLines(const std::string& path) {
  std::vector<std::string> lines;
  for (auto& line : SplitLines(ReadFileToString(path))) {
    if (!line.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

void PrintLines(const std::vector<ManifestEntry>& entries,
                const std::vector<std::string>& results) {
  for (size_t i = 0; i < entries.size(); ++i) {
    // n-best results already carry their own ids.
    if (results[i].find('\n') != std::string::npos) {
      std::cout << results[i];
    } else {
      std::cout << entries[i].id << '\t' << results[i] << '\n';
    }
  }
}

Transcription ParseTranscription(const std::string& text,
                                 const std::string& symbols,
                                 const Alphabet& alphabet) {
  Transcription z;
  if (!symbols.empty()) {
    std::istringstream in(symbols);
    std::string s;
    while (in >> s) z.labels.push_back(alphabet.Index(s));
    return z;
  }
  for (char32_t c : DecodeUtf8(text)) {
    if (c == U' ') {
      auto space = alphabet.space_index();
      if (!space) throw Error(ErrorKind::kInvalidInput, "alphabet has no <sp> for ' '");
      z.labels.push_back(*space);
    } else {
      z.labels.push_back(alphabet.Index(EncodeUtf8(c)));
    }
  }
  return z;
}

std::set<std::string> ReadVocabulary(const std::string& path) {
  std::set<std::string> vocab;
  for (const auto& line : ReadTextLines(path)) {
    for (auto& w : NormalizeTokens(line)) vocab.insert(std::move(w));
  }
  return vocab;
}

int Run(int argc, char** argv) {
  CLI::App app{"CTC decoding toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--threads", global.threads, "Worker threads (output never depends on it)")
      ->envname("CTC_THREADS")
      ->check(CLI::Range(1, 1024));
  app.add_option("--seed", global.seed, "Random seed for synthetic data")->envname("CTC_SEED");
  app.add_option("--log-level", global.log_level, "error, warn, info or debug")
      ->envname("CTC_LOG_LEVEL")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));

  std::function<void()> action;

  // decode
  auto* decode = app.add_subcommand("decode", "Decode posteriors");
  decode->require_subcommand(1);

  InputOptions greedy_in;
  std::string greedy_alphabet, convention;
  auto* greedy = decode->add_subcommand("greedy", "Best path decoding");
  greedy_in.Register(greedy);
  greedy->add_option("--alphabet", greedy_alphabet, "Alphabet file")->required();
  greedy->add_option("--word-convention", convention, "case, space or none")
      ->check(CLI::IsMember({"case", "space", "none"}));
  greedy->callback([&] {
    action = [&] {
      Alphabet alphabet = ReadAlphabetFile(greedy_alphabet);
      if (convention == "case") alphabet = alphabet.WithConvention(WordConvention::kCase);
      if (convention == "space") alphabet = alphabet.WithConvention(WordConvention::kSpace);
      if (convention == "none") alphabet = alphabet.WithConvention(WordConvention::kNone);
      auto entries = greedy_in.Entries();
      PrintLines(entries, BatchMap(entries.size(), [&](size_t i) {
        return RenderText(GreedyDecode(ReadPosteriorFile(entries[i].path), alphabet),
                          alphabet);
      }, global.threads));
    };
  });

  InputOptions beam_in;
  std::string beam_alphabet, charlm_path, external_lm;
  BeamConfig beam_config;
  auto* beam = decode->add_subcommand("beam", "Prefix beam search with a character LM");
  beam_in.Register(beam);
  beam->add_option("--alphabet", beam_alphabet, "Alphabet file")->required();
  auto* lm_group = beam->add_option_group("lm");
  lm_group->add_option("--charlm", charlm_path, "Character LM (ARPA)");
  lm_group->add_option("--external-lm", external_lm, "Command speaking the LM line protocol");
  lm_group->require_option(1);
  beam->add_option("--beam", beam_config.beam_width, "Beam width")->capture_default_str();
  beam->add_option("--bonus", beam_config.insertion_bonus, "Insertion bonus b")
      ->capture_default_str();
  beam->add_option("--lm-weight", beam_config.lm_weight, "LM weight")->capture_default_str();
  beam->add_flag("--space-insertion", beam_config.space_insertion,
                 "Insert spaces scored by the LM only");
  beam->add_option("--nbest", beam_config.nbest, "Hypotheses per utterance")
      ->capture_default_str();
  beam->callback([&] {
    action = [&] {
      beam_config.Validate();
      const Alphabet alphabet = ReadAlphabetFile(beam_alphabet);
      std::unique_ptr<CharLm> lm;
      if (!charlm_path.empty()) {
        lm = std::make_unique<NGramCharLm>(ReadArpaFile(charlm_path));
      } else {
        lm = std::make_unique<ExternalCharLm>(external_lm, alphabet.size());
      }
      auto entries = beam_in.Entries();
      PrintLines(entries, BatchMap(entries.size(), [&](size_t i) {
        BeamResult r = BeamDecode(ReadPosteriorFile(entries[i].path), alphabet, *lm,
                                  beam_config);
        if (beam_config.nbest == 1) return RenderText(r.hypotheses[0].prefix, r.alphabet);
        std::string out;
        char score[64];
        for (const auto& h : r.hypotheses) {
          std::snprintf(score, sizeof(score), "%.6f", h.score);
          out += entries[i].id + "\t" + RenderText(h.prefix, r.alphabet) + "\t" + score + "\n";
        }
        return out;
      }, global.threads));
    };
  });

  InputOptions wfst_in;
  std::string graph_path, prior_path;
  WfstDecodeConfig wfst_config;
  auto* wfst = decode->add_subcommand("wfst", "Viterbi search over a T o L o G graph");
  wfst_in.Register(wfst);
  wfst->add_option("--graph", graph_path, "Search graph (CTCG)")->required();
  wfst->add_option("--prior", prior_path, "Label log-priors, one per line")->required();
  wfst->add_option("--acoustic-scale", wfst_config.acoustic_scale, "Acoustic scale")
      ->capture_default_str();
  wfst->add_option("--beam", wfst_config.beam, "Max active states, 0 for all")
      ->capture_default_str();
  wfst->add_option("--word-penalty", wfst_config.word_penalty, "Cost per word")
      ->capture_default_str();
  wfst->callback([&] {
    action = [&] {
      wfst_config.Validate();
      const Wfst graph = ReadWfstFile(graph_path);
      const PriorVector prior = ParsePrior(ReadFileToString(prior_path));
      auto entries = wfst_in.Entries();
      PrintLines(entries, BatchMap(entries.size(), [&](size_t i) {
        WfstDecodeResult r =
            WfstDecode(ReadPosteriorFile(entries[i].path), prior, graph, wfst_config);
        if (r.status == WfstDecodeStatus::kNoSurvivor) {
          spdlog::warn("{}: no token survived the search", entries[i].id);
        }
        std::string text;
        for (const auto& w : r.words) text += (text.empty() ? "" : " ") + w;
        return text;
      }, global.threads));
    };
  });

  // train-charlm
  std::string char_corpus, char_out;
  CharLmTrainOptions char_options;
  auto* train_char = app.add_subcommand("train-charlm", "Train a character n-gram LM");
  train_char->add_option("--corpus", char_corpus, "One sentence per line")->required();
  train_char->add_option("--order", char_options.order, "Order")->capture_default_str();
  train_char->add_option("--discount", char_options.discount, "KN discount")
      ->capture_default_str();
  train_char->add_option("--max-length", char_options.max_length, "Characters per sentence")
      ->capture_default_str();
  train_char->add_option("--out", char_out, "Output ARPA")->required();
  train_char->callback([&] {
    action = [&] {
      WriteArpaFile(char_out, TrainCharNGram(ReadTextLines(char_corpus), char_options));
    };
  });

  // train-wordlm
  std::string word_corpus, word_out;
  int word_order = 3;
  double word_discount = 0.75;
  auto* train_word = app.add_subcommand("train-wordlm", "Train a word n-gram LM");
  train_word->add_option("--corpus", word_corpus, "One sentence per line")->required();
  train_word->add_option("--order", word_order, "Order")->capture_default_str();
  train_word->add_option("--discount", word_discount, "KN discount")->capture_default_str();
  train_word->add_option("--out", word_out, "Output ARPA")->required();
  train_word->callback([&] {
    action = [&] {
      WriteArpaFile(word_out,
                    TrainWordNGram(ReadTextLines(word_corpus), word_order, word_discount));
    };
  });

  // build-graph
  std::string graph_alphabet, graph_lexicon, graph_arpa, graph_out;
  auto* build = app.add_subcommand("build-graph", "Compose token, lexicon and grammar");
  build->add_option("--alphabet", graph_alphabet, "Alphabet file")->required();
  build->add_option("--lexicon", graph_lexicon, "WORD<TAB>units lines")->required();
  build->add_option("--arpa", graph_arpa, "Word LM (ARPA)")->required();
  build->add_option("--out", graph_out, "Output graph")->required();
  build->callback([&] {
    action = [&] {
      Wfst graph = BuildSearchGraph(ReadAlphabetFile(graph_alphabet),
                                    ReadLexiconFile(graph_lexicon),
                                    ReadArpaFile(graph_arpa));
      spdlog::info("search graph: {} states, {} arcs", graph.num_states(), graph.num_arcs());
      WriteWfstFile(graph_out, graph);
    };
  });

  // score
  std::string ref_path, hyp_path, vocab_path, system_name = "system";
  bool per_utt = false, as_json = false;
  auto* score = app.add_subcommand("score", "Word error rate against references");
  score->add_option("--ref", ref_path, "UTTID<TAB>text lines")->required();
  score->add_option("--hyp", hyp_path, "UTTID<TAB>text lines")->required();
  score->add_option("--vocab", vocab_path, "Training vocabulary for OOV analysis");
  score->add_option("--name", system_name, "System name in the report");
  score->add_flag("--per-utt", per_utt, "Also report every utterance");
  score->add_flag("--json", as_json, "Machine-readable output");
  score->callback([&] {
    action = [&] {
      auto ref = ParseKeyedLines(ReadFileToString(ref_path), ref_path);
      auto hyp = ParseKeyedLines(ReadFileToString(hyp_path), hyp_path);
      std::set<std::string> vocab;
      if (!vocab_path.empty()) vocab = ReadVocabulary(vocab_path);
      CompareReport report;
      report.systems.push_back(
          ScoreSystem(system_name, ref, hyp, vocab_path.empty() ? nullptr : &vocab));
      if (as_json) {
        if (!per_utt) report.systems[0].per_utterance.clear();
        std::cout << FormatJson(report);
        return;
      }
      std::cout << FormatTable(report);
      if (per_utt) std::cout << FormatPerUtterance(report.systems[0]);
    };
  });

  // score-seq
  std::string seq_post, seq_alphabet, seq_text, seq_symbols;
  auto* score_seq = app.add_subcommand("score-seq", "Print log P(z|X) for one transcription");
  score_seq->add_option("--post", seq_post, "Posterior file")->required();
  score_seq->add_option("--alphabet", seq_alphabet, "Alphabet file")->required();
  auto* seq_group = score_seq->add_option_group("transcription");
  seq_group->add_option("--text", seq_text, "Characters; ' ' means <sp>");
  seq_group->add_option("--symbols", seq_symbols, "Space-separated alphabet symbols");
  seq_group->require_option(1);
  score_seq->callback([&] {
    action = [&] {
      const Alphabet alphabet = ReadAlphabetFile(seq_alphabet);
      const PosteriorMatrix post = ReadPosteriorFile(seq_post);
      if (post.num_labels() != alphabet.size()) {
        throw Error(ErrorKind::kInvalidInput, "posterior and alphabet sizes differ");
      }
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.10g",
                    SequenceLogProbability(ParseTranscription(seq_text, seq_symbols, alphabet),
                                           post));
      std::cout << buf << '\n';
    };
  });

  // estimate-priors
  InputOptions prior_in;
  std::string prior_out;
  double prior_floor = kDefaultPriorFloor;
  auto* priors = app.add_subcommand("estimate-priors", "Mean posterior per label");
  prior_in.Register(priors);
  priors->add_option("--out", prior_out, "Output prior file")->required();
  priors->add_option("--floor", prior_floor, "Probability floor")->capture_default_str();
  priors->callback([&] {
    action = [&] {
      std::vector<PosteriorMatrix> all;
      for (const auto& e : prior_in.Entries()) all.push_back(ReadPosteriorFile(e.path));
      WriteStringToFile(prior_out,
                        SerializePrior(EstimatePriors(all, prior_floor, global.threads)));
    };
  });

  // demo
  demo::DemoOptions demo_options;
  std::string data_dir = CTCDEC_DEMO_DIR, work_dir;
  bool demo_json = false;
  auto* demo_cmd = app.add_subcommand("demo", "Run the bundled toy experiment");
  demo_cmd->add_option("--data-dir", data_dir, "Directory with train.txt and test.txt")
      ->capture_default_str();
  demo_cmd->add_option("--work-dir", work_dir, "Write intermediate artifacts here");
  demo_cmd->add_flag("--json", demo_json, "Print the comparison as JSON");
  demo_cmd->callback([&] {
    action = [&] {
      demo_options.data_dir = data_dir;
      demo_options.seed = global.seed;
      demo_options.threads = global.threads;
      if (!work_dir.empty()) demo_options.work_dir = work_dir;
      demo::DemoResult result = demo::RunDemo(demo_options);
      std::cout << (demo_json ? FormatJson(result.compare) : result.report);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "error: usage: " << message << '\n';
    return ExitCode(ErrorKind::kUsage);
  }

  auto logger = spdlog::stderr_logger_st("ctc");
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::from_str(global.log_level));
  spdlog::set_default_logger(logger);

  action();
  std::cout.flush();
  return 0;
}

}  // namespace
}  // namespace ctcdec

int main(int argc, char** argv) {
  try {
    return ctcdec::Run(argc, argv);
  } catch (const ctcdec::Error& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "error: " << ctcdec::ErrorKindName(e.kind()) << ": " << message << '\n';
    return ctcdec::ExitCode(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return ctcdec::ExitCode(ctcdec::ErrorKind::kInternal);
  }
}
