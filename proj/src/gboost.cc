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

#include "callboost/gboost.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "callboost/error.h"
#include "callboost/fst_ops.h"
#include "callboost/text_util.h"

namespace callboost {
namespace {

constexpr char kBoostMarker[] = "boosted";

bool HasBackoff(const Fst &g, StateId s) {
  for (const Arc &arc : g.Arcs(s)) {
    if (arc.ilabel == kEpsilon) return true;
  }
  return false;
}

int FindArc(const Fst &g, StateId s, Label label) {
  auto arcs = g.Arcs(s);
  for (size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].ilabel == label) return static_cast<int>(i);
  }
  return -1;
}

class Booster {
 public:
  Booster(const Fst &g, const GBoostOptions &opts)
      : g_(g), opts_(opts), out_(g) {
    // Reference costs for created arcs come from the unmodified grammar.
    min_out_.resize(g.NumStates());
    for (StateId s = 0; s < g.NumStates(); ++s) {
      double best = Weight::Zero().Value();
      for (const Arc &arc : g.Arcs(s)) best = std::min(best, arc.weight.Value());
      min_out_[s] = best;
    }
  }

  Fst &fst() { return out_; }
  size_t discounted() const { return discounted_.size(); }
  size_t created() const { return created_.size(); }

  void Discount(StateId s, int arc_index) {
    if (!discounted_.insert({s, arc_index}).second) return;
    Arc &arc = out_.MutableArcs(s)[arc_index];
    arc.weight = Weight(arc.weight.Value() - opts_.discount.Value());
  }

  // Adds `label` at state s toward the unigram state unless already there.
  void Create(StateId s, Label label) {
    if (!created_.insert({s, label}).second) return;
    if (FindArc(g_, s, label) >= 0) return;
    out_.AddArc(s, Arc{label, label, Weight(NewArcCost(s)), Unigram()});
  }

  StateId Unigram() {
    if (!unigram_) unigram_ = FindUnigramState(g_);
    return *unigram_;
  }

 private:
  double NewArcCost(StateId s) const {
    if (opts_.new_arc_cost) return *opts_.new_arc_cost;
    double base = std::isfinite(min_out_[s]) ? min_out_[s] : 0.0;
    return std::max(base + 1.0, 0.1);
  }

  const Fst &g_;
  const GBoostOptions &opts_;
  Fst out_;
  std::vector<double> min_out_;
  std::set<std::pair<StateId, int>> discounted_;
  std::set<std::pair<StateId, Label>> created_;
  std::optional<StateId> unigram_;
};

}  // namespace

BoostMode ParseBoostMode(const std::string &name) {
  if (name == "word") return BoostMode::kWord;
  if (name == "sequence") return BoostMode::kSequence;
  throw ValidationError("unknown boost mode '" + name +
                        "' (expected word|sequence)");
}

const char *BoostModeName(BoostMode mode) {
  return mode == BoostMode::kWord ? "word" : "sequence";
}

StateId FindUnigramState(const Fst &g) {
  if (g.Empty()) throw ValidationError("grammar has no start state");
  std::set<StateId> seen;
  StateId s = g.Start();
  for (;;) {
    if (!seen.insert(s).second) {
      throw ValidationError("backoff chain loops at state " + std::to_string(s));
    }
    StateId next = kNoStateId;
    for (const Arc &arc : g.Arcs(s)) {
      if (arc.ilabel != kEpsilon) continue;
      if (next != kNoStateId) {
        throw ValidationError("state " + std::to_string(s) +
                              " has more than one backoff arc; cannot "
                              "resolve the unigram state");
      }
      next = arc.nextstate;
    }
    if (next == kNoStateId) return s;
    s = next;
  }
}

bool IsBoosted(const Fst &g) {
  return std::any_of(g.Metadata().begin(), g.Metadata().end(),
                     [](const std::string &line) {
                       return StartsWith(line, kBoostMarker);
                     });
}

GBoostResult BoostGrammar(const Fst &g,
                          const std::vector<ExpansionVariant> &variants,
                          const GBoostOptions &opts) {
  if (!(opts.discount.Value() >= 0) || !opts.discount.IsFinite()) {
    throw ValidationError("grammar discount must be a finite cost >= 0");
  }
  if (opts.new_arc_cost && !std::isfinite(*opts.new_arc_cost)) {
    throw ValidationError("new arc cost must be finite");
  }
  if (!g.InputSymbols()) {
    throw ValidationError("grammar needs a symbol table to match words");
  }
  auto syms = std::make_shared<SymbolTable>(*g.InputSymbols());
  std::vector<std::vector<Label>> sequences;
  for (const auto &variant : variants) {
    std::vector<Label> seq;
    for (const auto &word : variant.words) seq.push_back(syms->AddSymbol(word));
    if (!seq.empty()) sequences.push_back(std::move(seq));
  }

  Booster booster(g, opts);

  if (opts.mode == BoostMode::kWord) {
    std::set<Label> words;
    for (const auto &seq : sequences) words.insert(seq.begin(), seq.end());
    for (StateId s = 0; s < g.NumStates(); ++s) {
      auto arcs = g.Arcs(s);
      for (size_t i = 0; i < arcs.size(); ++i) {
        if (arcs[i].ilabel != kEpsilon && words.count(arcs[i].ilabel)) {
          booster.Discount(s, static_cast<int>(i));
        }
      }
    }
    if (!words.empty()) {
      std::optional<StateId> unigram;
      try {
        unigram = FindUnigramState(g);
      } catch (const ValidationError &) {
        // Only fatal if some state below actually needs a created arc.
      }
      for (Label w : words) {
        for (StateId s = 0; s < g.NumStates(); ++s) {
          if (HasBackoff(g, s) && FindArc(g, s, w) < 0) booster.Create(s, w);
        }
        if (unigram && FindArc(g, *unigram, w) < 0) booster.Create(*unigram, w);
      }
    }
  } else {
    for (const auto &seq : sequences) {
      bool started = false;
      for (StateId s = 0; s < g.NumStates(); ++s) {
        int idx = FindArc(g, s, seq[0]);
        if (idx < 0) continue;
        started = true;
        booster.Discount(s, idx);
        StateId t = g.Arcs(s)[idx].nextstate;
        for (size_t i = 1; i < seq.size(); ++i) {
          int next = FindArc(g, t, seq[i]);
          if (next < 0) {
            // Out of context: offer the word once here and stop the walk.
            booster.Create(t, seq[i]);
            break;
          }
          booster.Discount(t, next);
          t = g.Arcs(t)[next].nextstate;
        }
      }
      if (!started) booster.Create(booster.Unigram(), seq[0]);
    }
  }

  GBoostResult result;
  result.discounted_arcs = booster.discounted();
  result.fst = ArcSort(booster.fst(), SortSide::kInput);
  result.created_arcs = result.fst.TotalArcs() - g.TotalArcs();
  result.fst.SetInputSymbols(syms);
  result.fst.SetOutputSymbols(syms);
  result.fst.AddMetadata(std::string(kBoostMarker) +
                         " mode=" + BoostModeName(opts.mode) +
                         " k=" + FormatDouble(opts.discount.Value()) +
                         " discounted=" + std::to_string(result.discounted_arcs) +
                         " created=" + std::to_string(result.created_arcs));
  return result;
}

}  // namespace callboost
