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
// Desk-scale stand-ins for the decoding cascade: a bigram grammar G with
// backoff, a character lexicon L, and an utterance confusion machine U whose
// composition U o L o G plays the part of a first-pass decoder.

#ifndef CALLBOOST_TOY_MODELS_H_
#define CALLBOOST_TOY_MODELS_H_

#include <memory>
#include <string>
#include <vector>

#include "callboost/fst.h"
#include "callboost/lattice.h"

namespace callboost {

// Closes every word in the lexicon and the confusion machine.
inline constexpr char kWordEnd[] = "|";

struct BigramOptions {
  // Weight of the maximum-likelihood bigram against the add-one unigram.
  double interpolation = 0.8;
};

// Interpolated bigram acceptor over every word of `words`.
//
// State 0 is the sentence-start context, state 1 the unigram state and each
// word w has its own context state. Every context state has an arc for
// every word, an epsilon backoff arc to the unigram state and a final cost
// for the sentence end. Sentences must only use words of the table.
Fst BuildBigramGrammar(const std::vector<std::vector<std::string>> &sentences,
                       std::shared_ptr<const SymbolTable> words,
                       const BigramOptions &opts = {});

// Every character used by `words`, plus the word-end marker.
std::shared_ptr<SymbolTable> BuildCharTable(const SymbolTable &words);

// Character-to-word transducer. Reading a word's characters and the word-end
// marker from state 0 emits the word on the first character and returns to
// state 0.
Fst BuildCharLexicon(std::shared_ptr<const SymbolTable> words,
                     std::shared_ptr<const SymbolTable> chars);

struct AcousticHypothesis {
  std::vector<std::string> words;
  // One cost per word, placed on the word's first character.
  std::vector<double> acoustic;
};

// Union of one character chain per hypothesis, sharing the start state.
Fst BuildConfusionFst(const std::vector<AcousticHypothesis> &hyps,
                      std::shared_ptr<const SymbolTable> chars);

// Word lattice of U o L o G. Acoustic costs come from U, graph costs from G.
Lattice ToyDecode(const Fst &confusion, const Fst &lexicon, const Fst &grammar,
                  const std::string &utterance_id);

}  // namespace callboost

#endif  // CALLBOOST_TOY_MODELS_H_
