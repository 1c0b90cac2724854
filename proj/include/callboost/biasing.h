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

#ifndef CALLBOOST_BIASING_H_
#define CALLBOOST_BIASING_H_

#include <vector>

#include "callboost/callsign.h"
#include "callboost/fst.h"

namespace callboost {

struct BiasingOptions {
  // Words of a variant missing from the symbol table are appended to the
  // table copy carried by the result. When false they raise ValidationError.
  bool allow_new_words = true;
};

// Per-utterance biasing acceptor.
//
// State 0 is the start state, final with cost 0, and loops on every
// vocabulary word at cost 0. Variants hang off state 0 as a trie. Each trie
// arc carries a share of the credit (-discount split over the longest variant
// below it); each inner trie state has an epsilon "abandon" arc back to state
// 0 that pays back what was credited so far; a complete variant returns to
// state 0 with total cost exactly -discount, through its last word arc or,
// when the variant is a prefix of a longer one, through an epsilon
// completion arc. Composing a word acceptor with this machine therefore
// lowers a path's cost by discount for every complete, non-overlapping
// variant occurrence and leaves every other path cost unchanged.
//
// The result is input-arc-sorted and carries the (possibly extended) symbol
// table as both its input and output symbols. discount must be > 0.
Fst BuildBiasingFst(const std::vector<ExpansionVariant> &variants,
                    Weight discount, const SymbolTable &syms,
                    const BiasingOptions &opts = {});

}  // namespace callboost

#endif  // CALLBOOST_BIASING_H_
