// Copyright 2026 The callboost Authors.
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
//
// Synthetic experiments. A generated corpus stands in for real audio: each
// utterance has a true word sequence and a few competing hypotheses with
// designed total costs, decoded through the toy U o L o G cascade. The
// runner then compares the baseline with lattice rescoring, G boosting and
// their combination.
//
// Config file (INI). Comments must sit on their own line.
//
//   [corpus]
//   seed = 1
//   utterances = 300
//   ; surveillance list size, uniform on median +- spread
//   distractor_median = 5
//   distractor_spread = 2
//   ; callsigns the lists are drawn from
//   callsign_pool = 120
//   ; share of utterances whose confuser beats the truth, and by how much
//   ; (in multiples of the rescoring discount)
//   confusion_rate = 0.5
//   margin_low = 0.5
//   margin_high = 1.5
//   ; share of confusers that spell another pool callsign
//   collision_rate = 0.3
//   competitors = 4
//   no_callsign_rate = 0
//   grammar_sentences = 2000
//
//   [boost]
//   ; rescoring credit per callsign occurrence
//   discount = 2.0
//   ; G boosting discount per word arc
//   k = 2.0
//   mode = word
//
//   [run]
//   methods = baseline, rescore, gboost, gboost+rescore
//   variants = surveillance, ground_truth
//   jobs = 1

#ifndef CALLBOOST_HARNESS_H_
#define CALLBOOST_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "callboost/callsign.h"
#include "callboost/eval.h"
#include "callboost/fst.h"
#include "callboost/gboost.h"
#include "callboost/lattice.h"
#include "callboost/surveillance.h"
#include "callboost/toy_models.h"

namespace callboost {

struct CorpusConfig {
  uint64_t seed = 1;
  int utterances = 300;
  int distractor_median = 5;
  // Negative: half the median.
  int distractor_spread = -1;
  int callsign_pool = 120;
  double confusion_rate = 0.5;
  double margin_low = 0.5;
  double margin_high = 1.5;
  double collision_rate = 0.3;
  int competitors = 4;
  double no_callsign_rate = 0.0;
  // Sentences used to estimate the bigram grammar.
  int grammar_sentences = 2000;
};

struct BoostConfig {
  double discount = 2.0;
  double k = 2.0;
  BoostMode mode = BoostMode::kWord;
};

struct RunConfig {
  std::vector<std::string> methods = {"baseline", "rescore", "gboost",
                                      "gboost+rescore"};
  std::vector<std::string> variants = {"surveillance", "ground_truth"};
  int jobs = 1;
};

struct ExperimentConfig {
  CorpusConfig corpus;
  BoostConfig boost;
  RunConfig run;
};

ExperimentConfig ParseExperimentConfig(std::istream &is,
                                       const std::string &source);
ExperimentConfig LoadExperimentConfig(const std::string &path);
// Checks ranges and method/variant names; throws ValidationError.
void ValidateConfig(const ExperimentConfig &config);

struct SyntheticUtterance {
  std::string id;
  // hyps[0] is the truth, hyps[1] the confuser.
  std::vector<AcousticHypothesis> hyps;
  std::vector<double> totals;  // designed acoustic + graph cost per hyp
  bool confused = false;       // confuser cheaper than the truth
  double margin = 0.0;         // truth total - confuser total when confused
  bool collision = false;      // confuser spells another pool callsign
  std::optional<std::string> confuser_callsign;
};

struct Corpus {
  AirlineTable airlines;
  std::shared_ptr<const SymbolTable> words;
  std::shared_ptr<const SymbolTable> chars;
  Fst lexicon;
  Fst grammar;
  std::vector<std::string> pool;
  std::vector<SyntheticUtterance> utterances;
  std::vector<UtteranceContext> contexts;  // parallel to utterances
  Transcripts references;
};

// Deterministic in (config, discount). Throws ValidationError when the
// vocabulary or callsign pool cannot supply the requested distractors.
Corpus GenerateCorpus(const CorpusConfig &config, double discount,
                      const AirlineTable &airlines = AirlineTable::Default());

// First-pass lattice of one utterance under grammar `g`.
Lattice DecodeUtterance(const Corpus &corpus, size_t index, const Fst &g);

struct SystemSpec {
  std::string method;   // baseline | rescore | gboost | gboost+rescore
  std::string variant;  // surveillance | ground_truth; empty for baseline
  std::string Name(double k) const;
};

// Systems in report order.
std::vector<SystemSpec> ExpandSystems(const RunConfig &run);

struct UtteranceDiagnostics {
  std::string id;
  size_t list_size = 0;
  bool has_callsign = false;
  bool confused = false;
  double margin = 0.0;
  bool collision = false;
  // Confuser contains an expansion of a listed callsign.
  bool confuser_credited = false;
  std::vector<std::vector<std::string>> hyps;  // per system
  std::vector<bool> exact;                     // per system
};

struct SystemResult {
  SystemSpec spec;
  ReportRow row;
  WerStats wer;
  CallsignMetrics callsigns;
};

struct ExperimentReport {
  ContextStats context;
  std::vector<SystemResult> systems;
  std::vector<UtteranceDiagnostics> diagnostics;

  std::vector<ReportRow> Rows() const;
  // Row lookup by method and variant; throws when absent.
  const SystemResult &Get(const std::string &method,
                          const std::string &variant = "") const;
};

ExperimentReport RunExperiment(const Corpus &corpus,
                               const ExperimentConfig &config);
ExperimentReport RunExperiment(const ExperimentConfig &config);

void WriteDiagnostics(const ExperimentReport &report, std::ostream &os);

// Lattices, surveillance, references, ground-truth callsigns, grammar and
// symbol tables, in the formats the command-line tool reads.
void WriteCorpus(const Corpus &corpus, const std::string &dir);

}  // namespace callboost

#endif  // CALLBOOST_HARNESS_H_
