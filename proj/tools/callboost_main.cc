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
// callboost: command-line front end.
//
// Exit codes: 0 success, 1 usage, 2 I/O, 3 validation, 4 empty result.
// Failures print one line "error: <kind>: <message>" on stderr.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "callboost/biasing.h"
#include "callboost/callsign.h"
#include "callboost/error.h"
#include "callboost/eval.h"
#include "callboost/fst_io.h"
#include "callboost/gboost.h"
#include "callboost/harness.h"
#include "callboost/lattice.h"
#include "callboost/parallel.h"
#include "callboost/surveillance.h"
#include "callboost/text_util.h"

namespace callboost {
namespace {

constexpr char kCallsignHelp[] = R"(
Callsigns: 2-3 letter airline designator followed by a 1-4 character tail
that starts with a digit, e.g. DLH5KX, SWR2689.

Airline table (--airlines), one airline per line, '#' starts a comment:
  DLH,lufthansa;hansa
Without --airlines a built-in table is used.)";

constexpr char kSurveillanceHelp[] = R"(
Surveillance file: JSON lines, one object per utterance:
  {"utt": "u1", "ts": 1650000000, "callsigns": ["DLH5KX", "SWR2689"],
   "truth": "DLH5KX", "ref": "lufthansa five kilo x-ray descend"}
utt, ts and callsigns are required. A truth missing from the list needs
"out_of_list": true.)";

constexpr char kFstHelp[] = R"(
FST text format (integer labels, 0 = <eps>):
  src<TAB>dst<TAB>ilabel<TAB>olabel[<TAB>weight]
  state[<TAB>weight]
The source of the first line is the start state; a missing weight is 0.
Lines starting with '#' before the first arc are metadata.
Symbol tables: one "word<TAB>id" per line, id 0 = <eps>.)";

constexpr char kLatticeHelp[] = R"(
Lattice text format, one block per utterance:
  # utt <id>
  src<TAB>dst<TAB>word<TAB>acoustic<TAB>graph
  state<TAB>acoustic<TAB>graph
Words are spelled out (<eps> for epsilon); the source of the first line
after the header is the start state. --lattices takes one such stream or a
directory of <utt_id>.lat files.)";

constexpr char kTranscriptHelp[] = R"(
Transcripts: one "<utt_id><TAB><words...>" line per utterance.
Callsign file: one "<utt_id><TAB><raw callsign>" line per utterance.
Report columns: WER (whole utterances), CallWER (best-matching callsign
span), Acc (percent of callsigns recognized without error).)";

AirlineTable LoadAirlines(const std::string &path) {
  return path.empty() ? AirlineTable::Default() : AirlineTable::Load(path);
}

// "-" or empty means stdout.
class Output {
 public:
  explicit Output(const std::string &path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw IoError("cannot write " + path);
    path_ = path;
  }
  std::ostream &stream() { return path_.empty() ? std::cout : file_; }
  void Close() {
    if (path_.empty()) {
      std::cout.flush();
      return;
    }
    file_.close();
    if (!file_) throw IoError("write failed: " + path_);
  }

 private:
  std::ofstream file_;
  std::string path_;
};

void Warn(const std::string &msg) { std::cerr << "warning: " << msg << '\n'; }

std::vector<ExpansionVariant> VariantsFor(const UtteranceContext &ctx,
                                          const AirlineTable &airlines,
                                          bool truth_only) {
  std::vector<std::string> skipped;
  auto vars = ContextVariants(ctx, airlines, truth_only, {}, &skipped);
  for (const auto &raw : skipped) {
    Warn(ctx.utterance_id + ": unknown airline in " + raw + ", skipped");
  }
  return vars;
}

const UtteranceContext &RequireContext(
    const std::vector<UtteranceContext> &contexts, const std::string &utt) {
  const UtteranceContext *ctx = FindContext(contexts, utt);
  if (!ctx) throw ValidationError("utterance " + utt + " not in surveillance file");
  return *ctx;
}

// ---------------------------------------------------------------- expand

struct ExpandArgs {
  std::vector<std::string> callsigns;
  std::string airlines;
  bool niner = false;
};

void RunExpand(const ExpandArgs &args) {
  const AirlineTable table = LoadAirlines(args.airlines);
  ExpansionOptions opts;
  opts.niner = args.niner;
  std::ostringstream out;
  for (const auto &raw : args.callsigns) {
    for (const auto &v : Expand(raw, table, opts)) out << v.Text() << '\n';
  }
  std::cout << out.str();
}

// ------------------------------------------------------------ build-bias

struct BuildBiasArgs {
  std::string surveillance;
  std::string utt;
  double discount = 2.0;
  std::string syms;
  std::string syms_out;
  std::string airlines;
  bool truth_only = false;
  bool no_new_words = false;
  std::string out;
};

void RunBuildBias(const BuildBiasArgs &args) {
  const auto contexts = LoadSurveillance(args.surveillance);
  const UtteranceContext &ctx = RequireContext(contexts, args.utt);
  const AirlineTable airlines = LoadAirlines(args.airlines);
  const auto vars = VariantsFor(ctx, airlines, args.truth_only);
  if (vars.empty()) {
    Warn(args.utt + ": no callsigns to bias, writing an identity acceptor");
  }
  SymbolTable syms = args.syms.empty() ? SymbolTable() : SymbolTable::ReadFile(args.syms);
  BiasingOptions opts;
  opts.allow_new_words = !args.no_new_words;
  const Fst bias = BuildBiasingFst(vars, Weight(args.discount), syms, opts);
  Output out(args.out);
  WriteFstText(bias, out.stream());
  out.Close();
  if (!args.syms_out.empty()) bias.InputSymbols()->WriteFile(args.syms_out);
}

// --------------------------------------------------------------- rescore

struct RescoreArgs {
  std::string lattices;
  std::string surveillance;
  double discount = 2.0;
  bool truth_only = false;
  std::string syms;
  std::string airlines;
  double acoustic_scale = 1.0;
  double graph_scale = 1.0;
  int jobs = 1;
  std::string lattices_out;
  std::string out;
};

void RunRescore(const RescoreArgs &args) {
  auto syms = args.syms.empty()
                  ? std::make_shared<SymbolTable>()
                  : std::make_shared<SymbolTable>(SymbolTable::ReadFile(args.syms));
  const auto lattices = ReadLatticePath(args.lattices, syms);
  if (lattices.empty()) throw EmptyResult("no lattices in " + args.lattices);
  const auto contexts = LoadSurveillance(args.surveillance);
  const AirlineTable airlines = LoadAirlines(args.airlines);

  std::map<std::string, size_t> order;
  for (size_t i = 0; i < lattices.size(); ++i) {
    if (!order.emplace(lattices[i].UtteranceId(), i).second) {
      throw ValidationError("duplicate lattice for utterance " +
                            lattices[i].UtteranceId());
    }
    RequireContext(contexts, lattices[i].UtteranceId());
  }
  std::vector<std::vector<ExpansionVariant>> variants(lattices.size());
  for (size_t i = 0; i < lattices.size(); ++i) {
    variants[i] = VariantsFor(RequireContext(contexts, lattices[i].UtteranceId()),
                              airlines, args.truth_only);
  }

  std::vector<Hypothesis> hyps(lattices.size());
  std::vector<Lattice> rescored(lattices.size());
  ParallelFor(lattices.size(), args.jobs, [&](size_t i) {
    const Fst bias = BuildBiasingFst(variants[i], Weight(args.discount), *syms);
    rescored[i] = Rescore(lattices[i], bias);
    hyps[i] = BestHypothesis(rescored[i], args.acoustic_scale, args.graph_scale);
  });

  Output out(args.out);
  for (const auto &[id, i] : order) {
    out.stream() << id << '\t' << Join(hyps[i].words) << '\n';
  }
  out.Close();
  if (!args.lattices_out.empty()) {
    Output lat_out(args.lattices_out);
    for (const auto &[id, i] : order) WriteLattice(rescored[i], lat_out.stream());
    lat_out.Close();
  }
}

// --------------------------------------------------------------- boost-g

struct BoostArgs {
  std::string g;
  std::string syms;
  std::string surveillance;
  std::string utt;
  bool all = false;
  double k = 2.0;
  std::string mode = "word";
  std::string new_arc_cost = "auto";
  bool truth_only = false;
  bool force = false;
  std::string airlines;
  std::string out;
  std::string syms_out;
};

void RunBoost(const BoostArgs &args) {
  auto syms = std::make_shared<const SymbolTable>(SymbolTable::ReadFile(args.syms));
  Fst g = ReadFstFile(args.g, syms, syms);
  g.SetInputSymbols(syms);
  g.SetOutputSymbols(syms);
  if (IsBoosted(g) && !args.force) {
    throw ValidationError(args.g +
                          " is already boosted; pass --force to boost it again");
  }
  GBoostOptions opts;
  opts.discount = Weight(args.k);
  opts.mode = ParseBoostMode(args.mode);
  if (args.new_arc_cost != "auto") {
    auto v = ParseDouble(args.new_arc_cost);
    if (!v || !std::isfinite(*v)) {
      throw ValidationError("--new-arc-cost must be a number or 'auto'");
    }
    opts.new_arc_cost = *v;
  }
  const auto contexts = LoadSurveillance(args.surveillance);
  const AirlineTable airlines = LoadAirlines(args.airlines);

  auto boost_one = [&](const UtteranceContext &ctx) {
    auto result = BoostGrammar(g, VariantsFor(ctx, airlines, args.truth_only), opts);
    std::cerr << ctx.utterance_id << ": discounted " << result.discounted_arcs
              << " arcs, created " << result.created_arcs << '\n';
    return result;
  };

  if (!args.all) {
    const GBoostResult result = boost_one(RequireContext(contexts, args.utt));
    Output out(args.out);
    WriteFstText(result.fst, out.stream());
    out.Close();
    if (!args.syms_out.empty()) result.fst.InputSymbols()->WriteFile(args.syms_out);
    return;
  }
  // One grammar copy at a time: boost, write, drop.
  if (args.out.empty() || args.out == "-") {
    throw ValidationError("--all needs -o <directory>");
  }
  std::error_code ec;
  std::filesystem::create_directories(args.out, ec);
  if (ec) throw IoError("cannot create directory " + args.out);
  for (const auto &ctx : contexts) {
    const GBoostResult result = boost_one(ctx);
    const auto base = std::filesystem::path(args.out) / ctx.utterance_id;
    WriteFstFile(result.fst, base.string() + ".fst");
    if (!(*result.fst.InputSymbols() == *syms)) {
      result.fst.InputSymbols()->WriteFile(base.string() + ".syms");
    }
  }
}

// ----------------------------------------------------------------- score

struct ScoreArgs {
  std::string ref;
  std::string hyp;
  std::string callsigns;
  std::string airlines;
  std::string name = "system";
  std::string tsv;
  std::string details;
};

void RunScore(const ScoreArgs &args) {
  const Transcripts refs = ReadTranscripts(args.ref);
  const Transcripts hyps = ReadTranscripts(args.hyp);
  const AirlineTable airlines = LoadAirlines(args.airlines);
  std::map<std::string, std::vector<std::vector<std::string>>> truth;
  for (const auto &[id, raw] : ReadCallsignFile(args.callsigns)) {
    auto &list = truth[id];
    for (const auto &v : Expand(raw, airlines)) list.push_back(v.words);
  }
  const WerStats wer = UtteranceWer(refs, hyps);
  const CallsignMetrics calls = ScoreCallsigns(refs, hyps, truth);
  const std::vector<ReportRow> rows = {
      ReportRow{args.name, wer.Wer(), calls.CallWer(), calls.Accuracy()}};
  WriteReportTable(rows, std::cout);
  if (!args.tsv.empty()) {
    Output out(args.tsv);
    WriteReportTsv(rows, out.stream());
    out.Close();
  }
  if (!args.details.empty()) {
    Output out(args.details);
    out.stream() << "utt\tref_callsign\thyp_span\tsub\tins\tdel\texact\n";
    for (const auto &r : calls.records) {
      const auto &c = r.callsign_edit_counts;
      out.stream() << r.utterance_id << '\t' << Join(r.ref_callsign_words) << '\t'
                   << Join(r.hyp_span_words) << '\t' << c.substitutions << '\t'
                   << c.insertions << '\t' << c.deletions << '\t'
                   << (r.exact_match ? 1 : 0) << '\n';
    }
    out.Close();
  }
}

// -------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<int> jobs;
  std::string out;
  std::string diagnostics;
  std::string corpus_dir;
};

void RunSimulate(const SimulateArgs &args) {
  ExperimentConfig config;
  if (!args.config.empty()) config = LoadExperimentConfig(args.config);
  if (args.seed) config.corpus.seed = *args.seed;
  if (args.jobs) config.run.jobs = *args.jobs;
  ValidateConfig(config);
  const Corpus corpus = GenerateCorpus(config.corpus, config.boost.discount);
  const ExperimentReport report = RunExperiment(corpus, config);
  const ContextStats &st = report.context;
  std::cout << "utterances " << st.utterances << ", with callsign "
            << st.with_callsign << ", without " << st.without_callsign
            << ", median callsigns per utterance " << st.median_callsigns
            << "\n\n";
  WriteReportTable(report.Rows(), std::cout);
  if (!args.out.empty()) {
    Output out(args.out);
    WriteReportTsv(report.Rows(), out.stream());
    out.Close();
  }
  if (!args.diagnostics.empty()) {
    Output out(args.diagnostics);
    WriteDiagnostics(report, out.stream());
    out.Close();
  }
  if (!args.corpus_dir.empty()) WriteCorpus(corpus, args.corpus_dir);
}

int Main(int argc, char **argv) {
  CLI::App app{"Callsign boosting for ATC speech recognition: expansion, "
               "biasing FSTs, lattice rescoring, grammar boosting, scoring "
               "and synthetic experiments.\n"
               "Exit codes: 0 ok, 1 usage, 2 I/O, 3 validation, 4 empty result."};
  app.name("callboost");
  app.require_subcommand(1);

  ExpandArgs expand;
  auto *cmd_expand = app.add_subcommand("expand", "Print every spoken expansion of callsigns, one per line");
  cmd_expand->add_option("callsigns", expand.callsigns, "Compressed callsigns")->required();
  cmd_expand->add_option("--airlines", expand.airlines, "Airline table CSV");
  cmd_expand->add_flag("--niner", expand.niner, "Also spell 9 as 'niner'");
  cmd_expand->footer(kCallsignHelp);

  BuildBiasArgs bias;
  auto *cmd_bias = app.add_subcommand("build-bias", "Write the biasing FST of one utterance");
  cmd_bias->add_option("--surveillance", bias.surveillance, "Surveillance JSONL")->required();
  cmd_bias->add_option("--utt", bias.utt, "Utterance id")->required();
  cmd_bias->add_option("--discount", bias.discount, "Credit per complete callsign (cost units)")
      ->capture_default_str();
  cmd_bias->add_option("--syms", bias.syms, "Word symbol table to build on");
  cmd_bias->add_option("--syms-out", bias.syms_out, "Write the (possibly extended) symbol table");
  cmd_bias->add_option("--airlines", bias.airlines, "Airline table CSV");
  cmd_bias->add_flag("--truth-only", bias.truth_only, "Bias the ground-truth callsign only");
  cmd_bias->add_flag("--no-new-words", bias.no_new_words,
                     "Fail instead of adding words missing from --syms");
  cmd_bias->add_option("-o,--output", bias.out, "Output FST (default stdout)");
  cmd_bias->footer(std::string(kSurveillanceHelp) + "\n" + kFstHelp);

  RescoreArgs rescore;
  auto *cmd_rescore = app.add_subcommand("rescore", "Rescore lattices with per-utterance biasing FSTs");
  cmd_rescore->add_option("--lattices", rescore.lattices, "Lattice stream or directory")->required();
  cmd_rescore->add_option("--surveillance", rescore.surveillance, "Surveillance JSONL")->required();
  cmd_rescore->add_option("--discount", rescore.discount, "Credit per complete callsign")
      ->capture_default_str();
  cmd_rescore->add_flag("--truth-only", rescore.truth_only, "Bias the ground-truth callsign only");
  cmd_rescore->add_option("--syms", rescore.syms, "Preload a word symbol table");
  cmd_rescore->add_option("--airlines", rescore.airlines, "Airline table CSV");
  cmd_rescore->add_option("--acoustic-scale", rescore.acoustic_scale, "Acoustic cost scale")
      ->capture_default_str();
  cmd_rescore->add_option("--graph-scale", rescore.graph_scale, "Graph cost scale")
      ->capture_default_str();
  cmd_rescore->add_option("--jobs", rescore.jobs, "Utterances processed in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_rescore->add_option("--lattices-out", rescore.lattices_out, "Write rescored lattices");
  cmd_rescore->add_option("-o,--output", rescore.out,
                          "Hypotheses '<utt><TAB><words>' sorted by id (default stdout)");
  cmd_rescore->footer(std::string(kLatticeHelp) + "\n" + kSurveillanceHelp);

  BoostArgs boost;
  auto *cmd_boost = app.add_subcommand("boost-g", "Boost callsign words in a grammar FST");
  cmd_boost->add_option("--g", boost.g, "Grammar FST")->required();
  cmd_boost->add_option("--syms", boost.syms, "Word symbol table of the grammar")->required();
  cmd_boost->add_option("--surveillance", boost.surveillance, "Surveillance JSONL")->required();
  auto *opt_utt = cmd_boost->add_option("--utt", boost.utt, "Utterance id");
  auto *opt_all = cmd_boost->add_flag("--all", boost.all,
                                      "Boost once per utterance into the -o directory");
  opt_utt->excludes(opt_all);
  cmd_boost->add_option("--k", boost.k, "Discount per matching word arc (cost units)")
      ->capture_default_str();
  cmd_boost->add_option("--mode", boost.mode, "word | sequence")
      ->check(CLI::IsMember({"word", "sequence"}))
      ->capture_default_str();
  cmd_boost->add_option("--new-arc-cost", boost.new_arc_cost,
                        "Cost of created arcs, or 'auto' (1 above the cheapest arc, at least 0.1)")
      ->capture_default_str();
  cmd_boost->add_flag("--truth-only", boost.truth_only, "Boost the ground-truth callsign only");
  cmd_boost->add_flag("--force", boost.force, "Boost a grammar that is already boosted");
  cmd_boost->add_option("--airlines", boost.airlines, "Airline table CSV");
  cmd_boost->add_option("-o,--output", boost.out, "Output FST, or directory with --all");
  cmd_boost->add_option("--syms-out", boost.syms_out, "Write the boosted symbol table");
  cmd_boost->footer(std::string(kFstHelp) + "\n" + kSurveillanceHelp);

  ScoreArgs score;
  auto *cmd_score = app.add_subcommand("score", "WER, callsign WER and callsign accuracy");
  cmd_score->add_option("--ref", score.ref, "Reference transcripts")->required();
  cmd_score->add_option("--hyp", score.hyp, "Hypothesis transcripts")->required();
  cmd_score->add_option("--callsigns", score.callsigns, "Ground-truth callsigns")->required();
  cmd_score->add_option("--airlines", score.airlines, "Airline table CSV");
  cmd_score->add_option("--name", score.name, "System name in the report")->capture_default_str();
  cmd_score->add_option("--tsv", score.tsv, "Also write the report as TSV");
  cmd_score->add_option("--details", score.details, "Per-utterance callsign records (TSV)");
  cmd_score->footer(kTranscriptHelp);

  SimulateArgs sim;
  auto *cmd_sim = app.add_subcommand("simulate", "Run a synthetic boosting experiment");
  cmd_sim->add_option("--config", sim.config, "Experiment config (INI)");
  cmd_sim->add_option("--seed", sim.seed, "Override corpus.seed");
  cmd_sim->add_option("--jobs", sim.jobs, "Override run.jobs")->check(CLI::PositiveNumber);
  cmd_sim->add_option("-o,--output", sim.out, "Report TSV");
  cmd_sim->add_option("--diagnostics", sim.diagnostics, "Per-utterance diagnostics TSV");
  cmd_sim->add_option("--write-corpus", sim.corpus_dir,
                      "Write lattices, surveillance, references and G to a directory");
  cmd_sim->footer(R"(
Config sections: [corpus] seed, utterances, distractor_median,
distractor_spread, callsign_pool, confusion_rate, margin_low, margin_high,
collision_rate, competitors, no_callsign_rate, grammar_sentences;
[boost] discount, k, mode; [run] methods (baseline, rescore, gboost,
gboost+rescore), variants (surveillance, ground_truth), jobs.)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::kUsage);
  }

  try {
    if (*cmd_expand) RunExpand(expand);
    if (*cmd_bias) RunBuildBias(bias);
    if (*cmd_rescore) RunRescore(rescore);
    if (*cmd_boost) {
      if (!boost.all && boost.utt.empty()) {
        std::cerr << "error: usage: boost-g needs --utt or --all\n";
        return static_cast<int>(ErrorKind::kUsage);
      }
      RunBoost(boost);
    }
    if (*cmd_score) RunScore(score);
    if (*cmd_sim) RunSimulate(sim);
  } catch (const Error &e) {
    std::string msg = e.what();
    for (char &c : msg) {
      if (c == '\n') c = ' ';
    }
    std::cerr << "error: " << ErrorKindName(e.kind()) << ": " << msg << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::exception &e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 70;
  }
  return 0;
}

}  // namespace
}  // namespace callboost

int main(int argc, char **argv) { return callboost::Main(argc, argv); }
