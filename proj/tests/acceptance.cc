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
// Acceptance run: one PASS/FAIL line per criterion with its wall time and
// limit. Exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "callboost/biasing.h"
#include "callboost/callsign.h"
#include "callboost/error.h"
#include "callboost/eval.h"
#include "callboost/fst_io.h"
#include "callboost/fst_ops.h"
#include "callboost/harness.h"
#include "callboost/lattice.h"
#include "callboost/parallel.h"
#include "callboost/rng.h"
#include "callboost/surveillance.h"
#include "callboost/text_util.h"
#include "oracle.h"

namespace callboost {
namespace {

using testing::ComposeOracle;
using testing::CostMapsNear;
using testing::EditDistanceOracle;
using testing::MinCostMap;
using testing::MinPathCost;
using testing::RandomAcyclicFst;
using testing::RandomFstOptions;

constexpr double kTol = 1e-9;

// Collects failure messages for one criterion.
struct Check {
  std::vector<std::string> failures;
  void Expect(bool ok, const std::string &what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++failed;
  }
  int failed = 0;
};

std::vector<ExpansionVariant> Variants(const std::vector<std::string> &texts) {
  std::vector<ExpansionVariant> out;
  for (const auto &t : texts) out.push_back({SplitWhitespace(t)});
  return out;
}

// Chain lattice for `text`; the acoustic cost sits on the first arc.
void AddPath(Lattice &lat, const std::string &text, double acoustic,
             double graph) {
  auto syms = std::const_pointer_cast<SymbolTable>(lat.Symbols());
  StateId s = lat.Start();
  bool first = true;
  for (const auto &w : SplitWhitespace(text)) {
    const StateId t = lat.AddState();
    lat.AddArc(s, LatticeArc{syms->AddSymbol(w), first ? acoustic : 0.0, 0.0, t});
    first = false;
    s = t;
  }
  lat.SetFinal(s, LatticeCost{0.0, graph});
}

Lattice NewLattice(const std::string &id, std::shared_ptr<SymbolTable> syms) {
  Lattice lat(id, std::move(syms));
  lat.SetStart(lat.AddState());
  return lat;
}

void ExpansionFidelity(Check &c) {
  const AirlineTable &table = AirlineTable::Default();
  auto texts = [&](const std::string &raw) {
    std::vector<std::string> out;
    for (const auto &v : Expand(raw, table)) out.push_back(v.Text());
    return out;
  };
  using V = std::vector<std::string>;
  c.Expect(texts("SWR2689") == V{"swiss two six eight nine"}, "SWR2689");
  c.Expect(texts("RYR1RK") == V{"ryanair one romeo kilo"}, "RYR1RK");
  c.Expect(texts("RYR1SG") == V{"ryanair one sierra golf"}, "RYR1SG");
  c.Expect(texts("DLH5KX") ==
               V{"hansa five kilo x-ray", "lufthansa five kilo x-ray"},
           "DLH5KX");
}

void FstOracles(Check &c) {
  Rng rng(20240501);
  for (int i = 0; i < 500; ++i) {
    RandomFstOptions opts;
    opts.epsilon_prob = 0.15;
    const Fst f = RandomAcyclicFst(rng, opts);
    const double oracle = MinPathCost(f);
    const auto path = ShortestPath(f);
    if (std::isinf(oracle)) {
      c.Expect(!path, "shortest path on empty language, fst " + std::to_string(i));
    } else {
      c.Expect(path && std::abs(path->cost.Value() - oracle) <= kTol,
               "shortest path cost, fst " + std::to_string(i));
    }
  }
  for (int i = 0; i < 200; ++i) {
    RandomFstOptions opts;
    opts.epsilon_prob = 0.2;
    const Fst a = RandomAcyclicFst(rng, opts);
    const Fst b = RandomAcyclicFst(rng, opts);
    c.Expect(CostMapsNear(MinCostMap(Compose(a, b)), ComposeOracle(a, b), kTol),
             "compose pair " + std::to_string(i));
  }
}

void NoOpInvariance(Check &c) {
  std::vector<ExpansionVariant> variants;
  for (const char *raw : {"SWR2689", "RYR1RK", "DLH5KX", "STK219L", "TVS84J"}) {
    for (auto &v : Expand(raw, AirlineTable::Default())) variants.push_back(v);
  }
  const std::vector<std::string> vocab = {"climb",   "descend", "contact",
                                          "tower",   "report",  "flight",
                                          "level",   "heading", "squawk"};
  Rng rng(303);
  // 200 lattices with at least one complete path.
  for (int i = 0; i < 200;) {
    auto syms = std::make_shared<SymbolTable>();
    for (const auto &w : vocab) syms->AddSymbol(w);
    RandomFstOptions opts;
    opts.acceptor = true;
    opts.num_labels = static_cast<int>(vocab.size());
    opts.epsilon_prob = 0.1;
    opts.min_weight = 0.0;
    const Fst f = RandomAcyclicFst(rng, opts);
    Lattice lat("rand" + std::to_string(i), syms);
    for (StateId s = 0; s < f.NumStates(); ++s) lat.AddState();
    lat.SetStart(f.Start());
    for (StateId s = 0; s < f.NumStates(); ++s) {
      for (const Arc &arc : f.Arcs(s)) {
        const double ac = static_cast<double>(rng.UniformInt(17)) / 8.0;
        lat.AddArc(s, LatticeArc{arc.ilabel, ac, arc.weight.Value(), arc.nextstate});
      }
      if (f.IsFinal(s)) lat.SetFinal(s, LatticeCost{0.5, f.Final(s).Value()});
    }
    lat.Trim();
    if (lat.Empty()) continue;
    ++i;
    const Fst bias = BuildBiasingFst(variants, Weight(2.0), *syms);
    const Hypothesis before = BestHypothesis(lat);
    const Hypothesis after = BestHypothesis(Rescore(lat, bias));
    c.Expect(before.words == after.words && std::abs(before.cost - after.cost) <= kTol,
             "lattice " + std::to_string(i));
  }
}

void ExactCredit(Check &c) {
  const auto variants =
      Variants({"swiss two six eight nine", "ryanair one romeo kilo"});
  const double d = 2.0;
  const std::vector<std::pair<std::string, int>> cases = {
      {"climb swiss two six eight nine", 1},
      {"ryanair one romeo kilo report swiss two six eight nine", 2},
      {"swiss two six eight nine ryanair one romeo kilo swiss two six eight "
       "nine contact",
       3},
  };
  for (const auto &[text, m] : cases) {
    auto syms = std::make_shared<SymbolTable>();
    Lattice lat = NewLattice("m" + std::to_string(m), syms);
    AddPath(lat, text, 7.0, 3.5);
    // A competitor without any callsign, too expensive to win either way.
    AddPath(lat, "climb flight level one two zero report", 20.0, 3.0);
    const Fst bias = BuildBiasingFst(variants, Weight(d), *syms);
    const Hypothesis before = BestHypothesis(lat);
    const Hypothesis after = BestHypothesis(Rescore(lat, bias));
    c.Expect(std::abs((before.cost - after.cost) - m * d) <= kTol,
             "m=" + std::to_string(m) + " reduction " +
                 FormatDouble(before.cost - after.cost));
    c.Expect(after.words == before.words, "m=" + std::to_string(m) + " words");
  }
  for (const std::string text :
       {"swiss two six eight one", "swiss two six climb", "ryanair one romeo",
        "ryanair one romeo report kilo", "swiss"}) {
    auto syms = std::make_shared<SymbolTable>();
    Lattice lat = NewLattice("prefix", syms);
    AddPath(lat, text, 4.0, 1.0);
    const Fst bias = BuildBiasingFst(variants, Weight(d), *syms);
    const Hypothesis before = BestHypothesis(lat);
    const Hypothesis after = BestHypothesis(Rescore(lat, bias));
    c.Expect(std::abs(before.cost - after.cost) <= kTol, "prefix '" + text + "'");
  }
}

void QualitativeFlip(Check &c) {
  auto syms = std::make_shared<SymbolTable>();
  Lattice lat = NewLattice("utt1", syms);
  AddPath(lat, "hello sovar one nine lima", 6.0, 4.0);
  AddPath(lat, "stobart two one nine lima", 6.25, 4.25);
  const auto truth = Expand("STK219L", AirlineTable::Default());
  c.Expect(truth.size() == 1 && truth[0].Text() == "stobart two one nine lima",
           "STK219L expansion");
  const Fst bias = BuildBiasingFst(truth, Weight(2.0), *syms);
  const Hypothesis before = BestHypothesis(lat);
  const Hypothesis after = BestHypothesis(Rescore(lat, bias));
  c.Expect(Join(before.words) == "hello sovar one nine lima", "baseline words");
  c.Expect(Join(after.words) == "stobart two one nine lima", "rescored words");
  c.Expect(std::abs(after.cost - 8.5) <= kTol, "rescored cost");

  const Transcripts refs = {{"utt1", truth[0].words}};
  const std::map<std::string, std::vector<std::vector<std::string>>> cs = {
      {"utt1", {truth[0].words}}};
  const double acc0 = ScoreCallsigns(refs, {{"utt1", before.words}}, cs).Accuracy();
  const double acc1 = ScoreCallsigns(refs, {{"utt1", after.words}}, cs).Accuracy();
  c.Expect(acc0 == 0.0 && acc1 == 100.0, "accuracy " + FormatDouble(acc0) +
                                             " -> " + FormatDouble(acc1));
}

std::vector<std::string> RelationalLines;

void RelationalTable(Check &c) {
  const int jobs = DefaultJobs();
  for (int median : {5, 29}) {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      ExperimentConfig config;
      config.corpus.seed = seed;
      config.corpus.utterances = 300;
      config.corpus.distractor_median = median;
      config.run.jobs = jobs;
      const ExperimentReport r = RunExperiment(config);
      const auto &base = r.Get("baseline").row;
      const auto &rs = r.Get("rescore", "surveillance").row;
      const auto &rg = r.Get("rescore", "ground_truth").row;
      const std::string tag =
          "median " + std::to_string(median) + " seed " + std::to_string(seed);
      c.Expect(base.accuracy < rs.accuracy, tag + ": Acc baseline < rescore");
      c.Expect(rs.accuracy <= rg.accuracy, tag + ": Acc rescore surv <= gt");
      for (const char *variant : {"surveillance", "ground_truth"}) {
        const auto &g = r.Get("gboost", variant).row;
        const auto &rv = r.Get("rescore", variant).row;
        const auto &gr = r.Get("gboost+rescore", variant).row;
        c.Expect(gr.call_wer <= std::min(g.call_wer, rv.call_wer),
                 tag + ": CallWER G+rescore " + variant);
      }
      const auto &grs = r.Get("gboost+rescore", "surveillance").row;
      c.Expect(grs.accuracy >= rs.accuracy, tag + ": Acc G+rescore >= rescore");
      char line[256];
      std::snprintf(line, sizeof(line),
                    "    median %2d seed %2d  Acc base %5.1f  resc %5.1f/%5.1f  "
                    "G %5.1f  G+r %5.1f  CallWER G+r %5.1f",
                    median, static_cast<int>(seed), base.accuracy, rs.accuracy,
                    rg.accuracy, r.Get("gboost", "surveillance").row.accuracy,
                    grs.accuracy, grs.call_wer);
      RelationalLines.push_back(line);
    }
  }
}

void MetricCorrectness(Check &c) {
  const std::vector<std::string> vocab = {"ryanair", "four", "tango", "mike",
                                          "bye",     "climb", "one"};
  Rng rng(707);
  Transcripts refs, hyps;
  size_t n_ref = 0, errors = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> r, h;
    const size_t nr = rng.UniformInt(9), nh = rng.UniformInt(9);
    for (size_t k = 0; k < nr; ++k) r.push_back(rng.Pick(vocab));
    for (size_t k = 0; k < nh; ++k) h.push_back(rng.Pick(vocab));
    const std::string id = "u" + std::to_string(i);
    n_ref += r.size();
    errors += EditDistanceOracle(r, h);
    refs[id] = r;
    hyps[id] = h;
  }
  const WerStats s = UtteranceWer(refs, hyps);
  c.Expect(s.n_ref_words == n_ref && s.Errors() == errors, "pooled counts");
  c.Expect(s.Wer() == 100.0 * static_cast<double>(errors) / n_ref, "pooled WER");

  const WerStats pair = UtteranceWer({{"a", SplitWhitespace("ryanair four tango mike")}},
                                     {{"a", SplitWhitespace("ryanair four bye bye")}});
  c.Expect(pair.substitutions == 2 && pair.Errors() == 2, "bye bye substitutions");
  c.Expect(pair.Wer() == 50.0, "bye bye WER");
}

void RoundTrips(Check &c) {
  Rng rng(808);
  for (int i = 0; i < 200; ++i) {
    RandomFstOptions opts;
    opts.epsilon_prob = 0.2;
    opts.min_weight = -2.5;
    Fst f = RandomAcyclicFst(rng, opts);
    for (StateId s = 0; s < f.NumStates(); ++s) {
      for (Arc &a : f.MutableArcs(s)) a.weight = Weight(a.weight.Value() / 3.0);
    }
    f.AddMetadata("trial " + std::to_string(i));
    std::stringstream one, two;
    WriteFstText(f, one);
    const Fst g = ReadFstText(one, "fst");
    WriteFstText(g, two);
    const Fst h = ReadFstText(two, "fst");
    c.Expect(g == h && g.Metadata() == h.Metadata(), "fst " + std::to_string(i));
  }

  auto syms = std::make_shared<SymbolTable>();
  for (int i = 0; i < 100; ++i) {
    Lattice lat = NewLattice("utt" + std::to_string(i), syms);
    const size_t paths = 1 + rng.UniformInt(3);
    for (size_t p = 0; p < paths; ++p) {
      AddPath(lat, rng.Bernoulli(0.5) ? "swiss two six eight nine" : "climb one",
              rng.Uniform(0.0, 10.0) / 3.0, rng.Uniform(0.0, 5.0));
    }
    std::stringstream one, two;
    WriteLattice(lat, one);
    const auto a = ReadLattices(one, "lat", syms);
    WriteLattice(a.at(0), two);
    const auto b = ReadLattices(two, "lat", syms);
    c.Expect(a.size() == 1 && b.size() == 1 && a[0] == b[0],
             "lattice " + std::to_string(i));
  }

  ExperimentConfig config;
  config.corpus.utterances = 100;
  config.corpus.no_callsign_rate = 0.2;
  config.corpus.grammar_sentences = 200;
  const Corpus corpus = GenerateCorpus(config.corpus, config.boost.discount);
  std::stringstream one, two;
  WriteSurveillance(corpus.contexts, one);
  const auto a = ParseSurveillance(one, "jsonl");
  WriteSurveillance(a, two);
  const auto b = ParseSurveillance(two, "jsonl");
  c.Expect(a == b && a == corpus.contexts, "surveillance jsonl");
}

struct Criterion {
  int number;
  const char *name;
  double limit_s;
  std::function<void(Check &)> run;
};

}  // namespace
}  // namespace callboost

int main() {
  using namespace callboost;
  const std::vector<Criterion> criteria = {
      {1, "expansion fidelity", 1.0, ExpansionFidelity},
      {2, "FST oracle equivalence", 30.0, FstOracles},
      {3, "biasing no-op invariance", 10.0, NoOpInvariance},
      {4, "exact-credit accounting", 5.0, ExactCredit},
      {5, "qualitative flip", 1.0, QualitativeFlip},
      {6, "relational table orderings", 180.0, RelationalTable},
      {7, "metric correctness", 10.0, MetricCorrectness},
      {8, "serialization round-trips", 5.0, RoundTrips},
  };
  int failed = 0;
  for (const auto &crit : criteria) {
    Check check;
    std::string error;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      crit.run(check);
    } catch (const std::exception &e) {
      error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < crit.limit_s;
    const bool pass = check.failed == 0 && error.empty() && in_time;
    std::printf("criterion %d %-28s %s  %7.2fs (limit %gs)\n", crit.number,
                crit.name, pass ? "PASS" : "FAIL", secs, crit.limit_s);
    if (crit.number == 6) {
      for (const auto &line : RelationalLines) std::printf("%s\n", line.c_str());
    }
    for (const auto &f : check.failures) std::printf("    failed: %s\n", f.c_str());
    if (check.failed > 5) std::printf("    ... %d failures in total\n", check.failed);
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    if (!in_time) std::printf("    over the time limit\n");
    if (!pass) ++failed;
    std::fflush(stdout);
  }
  std::printf("%s: %d of %zu criteria passed\n", failed ? "FAIL" : "PASS",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
