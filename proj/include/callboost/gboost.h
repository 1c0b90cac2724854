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
// Grammar boosting: lower the cost of callsign words directly in G so that a
// decoder composing with it favours them, and create cheap arcs for callsign
// words the grammar cannot emit from a given context.

#ifndef CALLBOOST_GBOOST_H_
#define CALLBOOST_GBOOST_H_

#include <optional>
#include <string>
#include <vector>

#include "callboost/callsign.h"
#include "callboost/fst.h"

namespace callboost {

enum class BoostMode {
  // Every arc labelled with any callsign word is discounted.
  kWord,
  // Only arcs along walks of G that spell a callsign from its first word on.
  kSequence,
};

BoostMode ParseBoostMode(const std::string &name);
const char *BoostModeName(BoostMode mode);

struct GBoostOptions {
  // Subtracted from each matching arc cost. Must be >= 0.
  Weight discount = Weight(2.0);
  // Cost of created arcs. Unset means: 1.0 above the cheapest outgoing arc
  // of the state, but at least 0.1.
  std::optional<double> new_arc_cost;
  BoostMode mode = BoostMode::kWord;
};

struct GBoostResult {
  Fst fst;
  size_t discounted_arcs = 0;
  size_t created_arcs = 0;
};

// Returns a boosted copy of `g`; the input is left untouched. `g` must carry
// an input symbol table; words missing from it are added to the copy's table.
// Epsilon (backoff) arcs are never discounted. Created arcs lead to the
// unigram state, found by following backoff arcs from the start state.
// The copy records a "boosted ..." metadata line.
GBoostResult BoostGrammar(const Fst &g,
                          const std::vector<ExpansionVariant> &variants,
                          const GBoostOptions &opts = {});

// Follows the chain of backoff arcs from the start state to a state without
// one. Throws ValidationError naming the offending state when the chain
// branches or loops.
StateId FindUnigramState(const Fst &g);

// True when `g` carries the metadata line written by BoostGrammar.
bool IsBoosted(const Fst &g);

}  // namespace callboost

#endif  // CALLBOOST_GBOOST_H_
