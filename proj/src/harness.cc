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

#include "callboost/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "callboost/biasing.h"
#include "callboost/error.h"
#include "callboost/fst_io.h"
#include "callboost/fst_ops.h"
#include "callboost/parallel.h"
#include "callboost/rng.h"
#include "callboost/text_util.h"

namespace callboost {
namespace {

const std::vector<std::string> &Prefixes() {
  static const std::vector<std::string> kPrefixes = {
      "", "hello", "good morning", "servus", "bonjour", "roger"};
  return kPrefixes;
}

const std::vector<std::string> &Commands() {
  static const std::vector<std::string> kCommands = {
      "contact tower",        "climb and maintain",  "descend and maintain",
      "turn left heading",    "turn right heading",  "cleared to land",
      "cleared for takeoff",  "radar contact",       "report established",
      "reduce speed",         "squawk ident",        "hold short",
      "line up and wait",     "expect vectors",      "proceed direct",
      "good bye",             "identified",          "continue approach",
      "say again",            "stand by"};
  return kCommands;
}

enum Stream : uint64_t {
  kPoolStream = 1,
  kGrammarStream = 2,
  kCoreStream = 10,
  kListStream = 11,
  kOrderStream = 12,
  kConfusionStream = 13,
};
constexpr uint64_t kGlobalItem = ~0ULL;
constexpr int64_t kBaseTimestamp = 1650000000;

std::string RandomCallsign(Rng &rng, const std::vector<const AirlineEntry *> &airlines) {
  std::string raw = rng.Pick(airlines)->icao;
  const size_t len = 1 + rng.UniformInt(4);
  raw += static_cast<char>('1' + rng.UniformInt(9));
  for (size_t i = 1; i < len; ++i) {
    if (rng.Bernoulli(0.6)) {
      raw += static_cast<char>('0' + rng.UniformInt(10));
    } else {
      raw += static_cast<char>('A' + rng.UniformInt(26));
    }
  }
  return raw;
}

struct Sentence {
  std::vector<std::string> words;
  size_t span_begin = 0;
  size_t span_end = 0;
};

Sentence MakeSentence(Rng &rng, const std::vector<std::string> *span) {
  Sentence s;
  s.words = SplitWhitespace(rng.Pick(Prefixes()));
  s.span_begin = s.words.size();
  if (span) s.words.insert(s.words.end(), span->begin(), span->end());
  s.span_end = s.words.size();
  for (auto &w : SplitWhitespace(rng.Pick(Commands()))) s.words.push_back(w);
  return s;
}

// Word sequences of every pool callsign expansion, for credit checks.
class VariantIndex {
 public:
  void Add(const std::vector<std::string> &words) {
    set_.insert(words);
    max_len_ = std::max(max_len_, words.size());
  }
  bool Occurs(const std::vector<std::string> &words) const {
    for (size_t i = 0; i < words.size(); ++i) {
      for (size_t j = i + 1; j <= words.size() && j - i <= max_len_; ++j) {
        if (set_.count(std::vector<std::string>(words.begin() + i,
                                                words.begin() + j))) {
          return true;
        }
      }
    }
    return false;
  }

 private:
  std::set<std::vector<std::string>> set_;
  size_t max_len_ = 0;
};

double GrammarCost(const Fst &g, const SymbolTable &words,
                   const std::vector<std::string> &sentence) {
  std::vector<Label> labels;
  for (const auto &w : sentence) labels.push_back(words.Id(w));
  Fst acceptor = LinearAcceptor(labels);
  acceptor.SetInputSymbols(g.InputSymbols());
  acceptor.SetOutputSymbols(g.InputSymbols());
  auto path = ShortestPath(Compose(acceptor, g));
  if (!path) throw ValidationError("grammar rejects a generated sentence");
  return path->cost.Value();
}

std::vector<std::string> ParseList(const std::string &value) {
  std::vector<std::string> out;
  for (auto &item : Split(value, ',')) {
    std::string t = Trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::string VariantLabel(const std::string &variant) {
  return variant == "ground_truth" ? "ground truth" : "surveillance data";
}

}  // namespace

ExperimentConfig ParseExperimentConfig(std::istream &is,
                                       const std::string &source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error &e) {
    throw ParseError(source, static_cast<int>(e.line()), e.message());
  }

  ExperimentConfig config;
  static const std::map<std::string, std::set<std::string>> kKeys = {
      {"corpus",
       {"seed", "utterances", "distractor_median", "distractor_spread",
        "callsign_pool", "confusion_rate", "margin_low", "margin_high",
        "collision_rate", "competitors", "no_callsign_rate",
        "grammar_sentences"}},
      {"boost", {"discount", "k", "mode"}},
      {"run", {"methods", "variants", "jobs"}},
  };
  for (const auto &[section, body] : tree) {
    auto known = kKeys.find(section);
    if (known == kKeys.end()) {
      throw ValidationError(source + ": unknown section [" + section + "]");
    }
    for (const auto &[key, value] : body) {
      if (!known->second.count(key)) {
        throw ValidationError(source + ": unknown key " + section + "." + key);
      }
    }
  }

  auto get = [&]<typename T>(const std::string &path, T &out) {
    auto node = tree.get_child_optional(path);
    if (!node) return;
    auto value = node->get_value_optional<T>();
    if (!value) {
      throw ValidationError(source + ": bad value for " + path + ": '" +
                            node->data() + "'");
    }
    out = *value;
  };
  CorpusConfig &c = config.corpus;
  get("corpus.seed", c.seed);
  get("corpus.utterances", c.utterances);
  get("corpus.distractor_median", c.distractor_median);
  get("corpus.distractor_spread", c.distractor_spread);
  get("corpus.callsign_pool", c.callsign_pool);
  get("corpus.confusion_rate", c.confusion_rate);
  get("corpus.margin_low", c.margin_low);
  get("corpus.margin_high", c.margin_high);
  get("corpus.collision_rate", c.collision_rate);
  get("corpus.competitors", c.competitors);
  get("corpus.no_callsign_rate", c.no_callsign_rate);
  get("corpus.grammar_sentences", c.grammar_sentences);
  get("boost.discount", config.boost.discount);
  get("boost.k", config.boost.k);
  std::string text;
  if (auto mode = tree.get_optional<std::string>("boost.mode")) {
    config.boost.mode = ParseBoostMode(Trim(*mode));
  }
  if (auto methods = tree.get_optional<std::string>("run.methods")) {
    config.run.methods = ParseList(*methods);
  }
  if (auto variants = tree.get_optional<std::string>("run.variants")) {
    config.run.variants = ParseList(*variants);
  }
  get("run.jobs", config.run.jobs);
  ValidateConfig(config);
  return config;
}

ExperimentConfig LoadExperimentConfig(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  return ParseExperimentConfig(in, path);
}

void ValidateConfig(const ExperimentConfig &config) {
  const CorpusConfig &c = config.corpus;
  auto require = [](bool ok, const std::string &what) {
    if (!ok) throw ValidationError("config: " + what);
  };
  auto rate = [](double r) { return r >= 0.0 && r <= 1.0; };
  require(c.utterances > 0, "corpus.utterances must be positive");
  require(c.distractor_median >= 1, "corpus.distractor_median must be >= 1");
  require(c.callsign_pool >= 2, "corpus.callsign_pool must be >= 2");
  require(rate(c.confusion_rate), "corpus.confusion_rate must be in [0, 1]");
  require(rate(c.collision_rate), "corpus.collision_rate must be in [0, 1]");
  require(rate(c.no_callsign_rate), "corpus.no_callsign_rate must be in [0, 1]");
  require(c.margin_low >= 0.0 && c.margin_low <= c.margin_high,
          "corpus.margin_low must be in [0, margin_high]");
  require(c.competitors >= 1, "corpus.competitors must be >= 1");
  require(c.grammar_sentences >= 1, "corpus.grammar_sentences must be >= 1");
  require(config.boost.discount > 0.0 && std::isfinite(config.boost.discount),
          "boost.discount must be positive");
  require(config.boost.k >= 0.0 && std::isfinite(config.boost.k),
          "boost.k must be >= 0");
  require(config.run.jobs >= 1, "run.jobs must be >= 1");
  static const std::set<std::string> kMethods = {"baseline", "rescore",
                                                 "gboost", "gboost+rescore"};
  static const std::set<std::string> kVariants = {"surveillance",
                                                  "ground_truth"};
  require(!config.run.methods.empty(), "run.methods is empty");
  std::set<std::string> seen;
  for (const auto &m : config.run.methods) {
    require(kMethods.count(m) > 0, "unknown method '" + m + "'");
    require(seen.insert(m).second, "method '" + m + "' listed twice");
  }
  seen.clear();
  for (const auto &v : config.run.variants) {
    require(kVariants.count(v) > 0, "unknown variant '" + v + "'");
    require(seen.insert(v).second, "variant '" + v + "' listed twice");
  }
  const bool needs_variant =
      std::any_of(config.run.methods.begin(), config.run.methods.end(),
                  [](const std::string &m) { return m != "baseline"; });
  require(!needs_variant || !config.run.variants.empty(),
          "run.variants is empty");
}

Corpus GenerateCorpus(const CorpusConfig &config, double discount,
                      const AirlineTable &airlines) {
  ExperimentConfig check;
  check.corpus = config;
  check.boost.discount = discount;
  ValidateConfig(check);
  if (airlines.Empty()) throw ValidationError("empty airline table");

  Corpus corpus;
  corpus.airlines = airlines;
  const auto entries = airlines.Entries();

  // Vocabulary: every word the generator can say, in sorted order.
  std::set<std::string> vocab;
  for (const auto *e : entries) {
    for (const auto &name : e->telephony) {
      for (auto &w : SplitWhitespace(name)) vocab.insert(w);
    }
  }
  for (const auto &w : DigitWords()) vocab.insert(w);
  for (const auto &w : NatoWords()) vocab.insert(w);
  for (const auto &p : Prefixes()) {
    for (auto &w : SplitWhitespace(p)) vocab.insert(w);
  }
  for (const auto &c : Commands()) {
    for (auto &w : SplitWhitespace(c)) vocab.insert(w);
  }
  auto words = std::make_shared<SymbolTable>();
  for (const auto &w : vocab) words->AddSymbol(w);
  corpus.words = words;
  corpus.chars = BuildCharTable(*words);
  corpus.lexicon = BuildCharLexicon(corpus.words, corpus.chars);
  const std::vector<std::string> vocab_list(vocab.begin(), vocab.end());
  // Substitutes mostly stay within their class: digits for digits, letters
  // for letters, airline names for airline names.
  std::vector<std::vector<std::string>> classes(3);
  std::map<std::string, size_t> class_of;
  for (const auto &w : DigitWords()) class_of.emplace(w, 0);
  for (const auto &w : NatoWords()) class_of.emplace(w, 1);
  for (const auto *e : entries) {
    for (const auto &name : e->telephony) {
      for (auto &w : SplitWhitespace(name)) class_of.emplace(w, 2);
    }
  }
  for (const auto &[w, c] : class_of) classes[c].push_back(w);

  const int spread = config.distractor_spread >= 0 ? config.distractor_spread
                                                   : config.distractor_median / 2;
  const int k_low = std::max(1, config.distractor_median - spread);
  const int k_high = std::max(k_low, config.distractor_median + spread);
  if (config.callsign_pool < k_high + 1) {
    throw ValidationError("callsign pool of " +
                          std::to_string(config.callsign_pool) +
                          " cannot supply surveillance lists of " +
                          std::to_string(k_high));
  }

  // Callsign pool.
  std::map<std::string, std::vector<ExpansionVariant>> expansions;
  {
    Rng rng(StreamSeed(config.seed, kGlobalItem, kPoolStream));
    size_t attempts = 0;
    while (corpus.pool.size() < static_cast<size_t>(config.callsign_pool)) {
      if (++attempts > 1000 * static_cast<size_t>(config.callsign_pool)) {
        throw ValidationError("airline table too small for a callsign pool of " +
                              std::to_string(config.callsign_pool));
      }
      std::string raw = RandomCallsign(rng, entries);
      if (expansions.count(raw)) continue;
      expansions[raw] = Expand(raw, airlines);
      corpus.pool.push_back(raw);
    }
  }
  VariantIndex pool_variants;
  for (const auto &[raw, vars] : expansions) {
    for (const auto &v : vars) pool_variants.Add(v.words);
  }

  // Grammar text: same phrase structure as the test utterances, with
  // callsigns drawn afresh.
  {
    Rng rng(StreamSeed(config.seed, kGlobalItem, kGrammarStream));
    std::vector<std::vector<std::string>> sentences;
    for (int i = 0; i < config.grammar_sentences; ++i) {
      auto vars = Expand(RandomCallsign(rng, entries), airlines);
      auto span = rng.Pick(vars).words;
      sentences.push_back(MakeSentence(rng, &span).words);
    }
    corpus.grammar = BuildBigramGrammar(sentences, corpus.words);
  }

  const size_t n_utts = static_cast<size_t>(config.utterances);
  corpus.utterances.resize(n_utts);
  corpus.contexts.resize(n_utts);
  for (size_t u = 0; u < n_utts; ++u) {
    SyntheticUtterance &utt = corpus.utterances[u];
    char id[32];
    std::snprintf(id, sizeof(id), "utt%05zu", u + 1);
    utt.id = id;

    Rng core(StreamSeed(config.seed, u, kCoreStream));
    const bool has_callsign = !core.Bernoulli(config.no_callsign_rate);
    const std::string truth = corpus.pool[core.UniformInt(corpus.pool.size())];
    const auto truth_span = core.Pick(expansions.at(truth)).words;
    const Sentence sentence =
        MakeSentence(core, has_callsign ? &truth_span : nullptr);
    double truth_acoustic = 0.0;
    for (size_t i = 0; i < sentence.words.size(); ++i) {
      truth_acoustic += core.Uniform(1.0, 3.0);
    }

    Rng list_rng(StreamSeed(config.seed, u, kListStream));
    const size_t k = static_cast<size_t>(list_rng.UniformRange(k_low, k_high));
    Rng order_rng(StreamSeed(config.seed, u, kOrderStream));
    std::vector<std::string> others;
    for (const auto &c : corpus.pool) {
      if (!has_callsign || c != truth) others.push_back(c);
    }
    order_rng.Shuffle(others);
    std::vector<std::string> list;
    if (has_callsign) list.push_back(truth);
    for (size_t i = 0; list.size() < k && i < others.size(); ++i) {
      list.push_back(others[i]);
    }
    std::sort(list.begin(), list.end());

    // Competitors.
    Rng conf(StreamSeed(config.seed, u, kConfusionStream));
    utt.confused = conf.Bernoulli(config.confusion_rate);
    const double margin =
        discount * conf.Uniform(config.margin_low, config.margin_high);
    utt.collision = conf.Bernoulli(config.collision_rate);

    std::vector<std::vector<std::string>> hyp_words = {sentence.words};
    auto is_new = [&](const std::vector<std::string> &w) {
      return std::find(hyp_words.begin(), hyp_words.end(), w) ==
             hyp_words.end();
    };
    const size_t region_begin = has_callsign ? sentence.span_begin
                                             : sentence.span_end;
    const size_t region_end =
        has_callsign ? sentence.span_end : sentence.words.size();
    auto corrupt = [&]() {
      for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<std::string> w = sentence.words;
        std::vector<size_t> positions;
        for (size_t i = region_begin; i < region_end; ++i) positions.push_back(i);
        conf.Shuffle(positions);
        const size_t m = 1 + conf.UniformInt(std::min<size_t>(2, positions.size()));
        for (size_t j = 0; j < m; ++j) {
          const std::string &orig = w[positions[j]];
          auto cls = class_of.find(orig);
          const bool same_class = conf.Bernoulli(0.8) && cls != class_of.end() &&
                                  classes[cls->second].size() > 1;
          const auto &choices = same_class ? classes[cls->second] : vocab_list;
          std::string repl;
          do {
            repl = conf.Pick(choices);
          } while (repl == orig);
          w[positions[j]] = repl;
        }
        if (is_new(w) && !pool_variants.Occurs(w)) return w;
      }
      throw ValidationError(
          "vocabulary too small to build distinct competitors for " + utt.id);
    };

    if (has_callsign && utt.collision) {
      std::vector<std::pair<std::string, const ExpansionVariant *>> candidates;
      for (const auto &c : corpus.pool) {
        if (c == truth) continue;
        for (const auto &v : expansions.at(c)) {
          if (v.words.size() == truth_span.size()) candidates.emplace_back(c, &v);
        }
      }
      if (candidates.empty()) {
        utt.collision = false;
      } else {
        const auto &[raw, variant] = conf.Pick(candidates);
        std::vector<std::string> w = sentence.words;
        std::copy(variant->words.begin(), variant->words.end(),
                  w.begin() + static_cast<long>(sentence.span_begin));
        hyp_words.push_back(w);
        utt.confuser_callsign = raw;
      }
    }
    if (!has_callsign) utt.collision = false;
    while (hyp_words.size() < static_cast<size_t>(config.competitors) + 1) {
      hyp_words.push_back(corrupt());
    }

    // Designed totals, then acoustic costs that realize them under the
    // baseline grammar.
    const double truth_graph =
        GrammarCost(corpus.grammar, *corpus.words, sentence.words);
    const double truth_total = truth_graph + truth_acoustic;
    utt.confused = utt.confused && has_callsign;
    utt.margin = utt.confused ? margin : 0.0;
    for (size_t h = 0; h < hyp_words.size(); ++h) {
      double total;
      if (h == 0) {
        total = truth_total;
      } else if (h == 1 && utt.confused) {
        total = truth_total - margin;
      } else {
        total = truth_total + discount * conf.Uniform(0.2, 2.0);
      }
      const double graph =
          h == 0 ? truth_graph
                 : GrammarCost(corpus.grammar, *corpus.words, hyp_words[h]);
      const double per_word =
          (total - graph) / static_cast<double>(hyp_words[h].size());
      utt.hyps.push_back(AcousticHypothesis{
          hyp_words[h], std::vector<double>(hyp_words[h].size(), per_word)});
      utt.totals.push_back(total);
    }

    UtteranceContext &ctx = corpus.contexts[u];
    ctx.utterance_id = utt.id;
    ctx.timestamp = kBaseTimestamp + 15 * static_cast<int64_t>(u);
    ctx.callsigns = list;
    if (has_callsign) ctx.ground_truth = truth;
    ctx.reference = sentence.words;
    corpus.references[utt.id] = sentence.words;
  }
  return corpus;
}

Lattice DecodeUtterance(const Corpus &corpus, size_t index, const Fst &g) {
  const SyntheticUtterance &utt = corpus.utterances.at(index);
  return ToyDecode(BuildConfusionFst(utt.hyps, corpus.chars), corpus.lexicon,
                   g, utt.id);
}

std::string SystemSpec::Name(double k) const {
  if (method == "baseline") return "baseline";
  if (method == "rescore") return "rescoring " + VariantLabel(variant);
  if (method == "gboost") {
    std::string name = "G boosting (k=" + FormatDouble(k) + ")";
    return variant == "ground_truth" ? name + " ground truth" : name;
  }
  return "G+rescoring " + VariantLabel(variant);
}

std::vector<SystemSpec> ExpandSystems(const RunConfig &run) {
  std::vector<SystemSpec> out;
  for (const auto &m : run.methods) {
    if (m == "baseline") {
      out.push_back({m, ""});
      continue;
    }
    for (const auto &v : run.variants) out.push_back({m, v});
  }
  return out;
}

std::vector<ReportRow> ExperimentReport::Rows() const {
  std::vector<ReportRow> rows;
  for (const auto &s : systems) rows.push_back(s.row);
  return rows;
}

const SystemResult &ExperimentReport::Get(const std::string &method,
                                          const std::string &variant) const {
  for (const auto &s : systems) {
    if (s.spec.method == method && s.spec.variant == variant) return s;
  }
  throw ValidationError("no system " + method + " " + variant + " in report");
}

ExperimentReport RunExperiment(const Corpus &corpus,
                               const ExperimentConfig &config) {
  ValidateConfig(config);
  const std::vector<SystemSpec> systems = ExpandSystems(config.run);
  const size_t n = corpus.utterances.size();
  std::vector<std::vector<std::vector<std::string>>> outputs(
      n, std::vector<std::vector<std::string>>(systems.size()));

  GBoostOptions boost_opts;
  boost_opts.discount = Weight(config.boost.k);
  boost_opts.mode = config.boost.mode;

  ParallelFor(n, config.run.jobs, [&](size_t i) {
    const UtteranceContext &ctx = corpus.contexts[i];
    const Lattice baseline = DecodeUtterance(corpus, i, corpus.grammar);
    std::map<std::string, Fst> bias;
    std::map<std::string, Lattice> boosted;
    auto get_bias = [&](const std::string &variant) -> const Fst & {
      auto it = bias.find(variant);
      if (it == bias.end()) {
        auto vars = ContextVariants(ctx, corpus.airlines,
                                    variant == "ground_truth");
        it = bias.emplace(variant, BuildBiasingFst(vars,
                                                   Weight(config.boost.discount),
                                                   *corpus.words))
                 .first;
      }
      return it->second;
    };
    auto get_boosted = [&](const std::string &variant) -> const Lattice & {
      auto it = boosted.find(variant);
      if (it == boosted.end()) {
        auto vars = ContextVariants(ctx, corpus.airlines,
                                    variant == "ground_truth");
        Fst g = BoostGrammar(corpus.grammar, vars, boost_opts).fst;
        it = boosted.emplace(variant, DecodeUtterance(corpus, i, g)).first;
      }
      return it->second;
    };
    for (size_t s = 0; s < systems.size(); ++s) {
      const SystemSpec &spec = systems[s];
      Hypothesis hyp;
      if (spec.method == "baseline") {
        hyp = BestHypothesis(baseline);
      } else if (spec.method == "rescore") {
        hyp = BestHypothesis(Rescore(baseline, get_bias(spec.variant)));
      } else if (spec.method == "gboost") {
        hyp = BestHypothesis(get_boosted(spec.variant));
      } else {
        hyp = BestHypothesis(
            Rescore(get_boosted(spec.variant), get_bias(spec.variant)));
      }
      outputs[i][s] = std::move(hyp.words);
    }
  });

  std::map<std::string, std::vector<std::vector<std::string>>> truth_callsigns;
  for (const auto &ctx : corpus.contexts) {
    if (!ctx.ground_truth) continue;
    auto &list = truth_callsigns[ctx.utterance_id];
    for (const auto &v : Expand(*ctx.ground_truth, corpus.airlines)) {
      list.push_back(v.words);
    }
  }

  ExperimentReport report;
  report.context = ComputeContextStats(corpus.contexts);
  for (size_t s = 0; s < systems.size(); ++s) {
    Transcripts hyps;
    for (size_t i = 0; i < n; ++i) {
      hyps[corpus.utterances[i].id] = outputs[i][s];
    }
    SystemResult result;
    result.spec = systems[s];
    result.wer = UtteranceWer(corpus.references, hyps);
    result.callsigns = ScoreCallsigns(corpus.references, hyps, truth_callsigns);
    result.row = ReportRow{systems[s].Name(config.boost.k), result.wer.Wer(),
                           result.callsigns.CallWer(),
                           result.callsigns.Accuracy()};
    report.systems.push_back(std::move(result));
  }

  for (size_t i = 0; i < n; ++i) {
    const SyntheticUtterance &utt = corpus.utterances[i];
    const UtteranceContext &ctx = corpus.contexts[i];
    UtteranceDiagnostics d;
    d.id = utt.id;
    d.list_size = ctx.callsigns.size();
    d.has_callsign = ctx.ground_truth.has_value();
    d.confused = utt.confused;
    d.margin = utt.margin;
    d.collision = utt.collision;
    // The confuser earns surveillance credit when it spells any listed
    // callsign, including one that is a prefix of its own.
    if (utt.hyps.size() > 1) {
      const auto &conf = utt.hyps[1].words;
      for (const auto &v : ContextVariants(ctx, corpus.airlines, false)) {
        if (std::search(conf.begin(), conf.end(), v.words.begin(),
                        v.words.end()) != conf.end()) {
          d.confuser_credited = true;
          break;
        }
      }
    }
    d.hyps = outputs[i];
    report.diagnostics.push_back(std::move(d));
  }
  // Exact-match flags, from the per-system callsign records.
  for (auto &d : report.diagnostics) d.exact.assign(systems.size(), false);
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < n; ++i) index[corpus.utterances[i].id] = i;
  for (size_t s = 0; s < systems.size(); ++s) {
    for (const auto &rec : report.systems[s].callsigns.records) {
      report.diagnostics[index.at(rec.utterance_id)].exact[s] = rec.exact_match;
    }
  }
  return report;
}

ExperimentReport RunExperiment(const ExperimentConfig &config) {
  ValidateConfig(config);
  return RunExperiment(GenerateCorpus(config.corpus, config.boost.discount),
                       config);
}

void WriteDiagnostics(const ExperimentReport &report, std::ostream &os) {
  os << "utt\tlist_size\thas_callsign\tconfused\tmargin\tcollision\t"
        "confuser_credited";
  for (const auto &s : report.systems) os << '\t' << s.row.system;
  os << '\n';
  for (const auto &d : report.diagnostics) {
    os << d.id << '\t' << d.list_size << '\t' << d.has_callsign << '\t'
       << d.confused << '\t' << FormatDouble(d.margin) << '\t' << d.collision
       << '\t' << d.confuser_credited;
    for (size_t s = 0; s < d.hyps.size(); ++s) {
      os << '\t' << (d.exact[s] ? "ok" : "--") << ' ' << Join(d.hyps[s]);
    }
    os << '\n';
  }
}

void WriteCorpus(const Corpus &corpus, const std::string &dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir);
  const fs::path root(dir);
  auto open = [&](const std::string &name) {
    std::ofstream out(root / name);
    if (!out) throw IoError("cannot write " + (root / name).string());
    return out;
  };
  {
    auto out = open("lattices.lat");
    for (size_t i = 0; i < corpus.utterances.size(); ++i) {
      WriteLattice(DecodeUtterance(corpus, i, corpus.grammar), out);
    }
  }
  {
    auto out = open("surveillance.jsonl");
    WriteSurveillance(corpus.contexts, out);
  }
  {
    auto out = open("ref.tsv");
    WriteTranscripts(corpus.references, out);
  }
  {
    auto out = open("callsigns.tsv");
    for (const auto &ctx : corpus.contexts) {
      if (ctx.ground_truth) out << ctx.utterance_id << '\t' << *ctx.ground_truth << '\n';
    }
  }
  {
    auto out = open("airlines.csv");
    corpus.airlines.Write(out);
  }
  WriteFstFile(corpus.grammar, (root / "G.fst").string());
  corpus.words->WriteFile((root / "words.syms").string());
}

}  // namespace callboost
