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

#include "callboost/toy_models.h"

#include <cmath>
#include <map>
#include <set>

#include "callboost/error.h"
#include "callboost/fst_ops.h"

namespace callboost {

Fst BuildBigramGrammar(const std::vector<std::vector<std::string>> &sentences,
                       std::shared_ptr<const SymbolTable> words,
                       const BigramOptions &opts) {
  if (!(opts.interpolation >= 0.0 && opts.interpolation < 1.0)) {
    throw ValidationError("bigram interpolation must lie in [0, 1)");
  }
  const std::vector<Label> labels = words->Labels();
  if (labels.empty()) throw ValidationError("empty grammar vocabulary");
  const Label kEnd = -1;  // sentence end in the count tables
  constexpr StateId kStart = 0, kUnigram = 1;
  std::map<Label, StateId> state_of;
  for (size_t i = 0; i < labels.size(); ++i) {
    state_of[labels[i]] = static_cast<StateId>(i + 2);
  }

  // Context kEpsilon stands for the sentence start.
  std::map<Label, double> unigram;
  std::map<Label, std::map<Label, double>> bigram;
  std::map<Label, double> context_total;
  double total = 0.0;
  for (const auto &sentence : sentences) {
    Label prev = kEpsilon;
    auto count = [&](Label w) {
      unigram[w] += 1.0;
      total += 1.0;
      bigram[prev][w] += 1.0;
      context_total[prev] += 1.0;
      prev = w;
    };
    for (const auto &word : sentence) count(words->Id(word));
    count(kEnd);
  }

  const double vocab = static_cast<double>(labels.size()) + 1.0;
  auto p_uni = [&](Label w) {
    auto it = unigram.find(w);
    return ((it == unigram.end() ? 0.0 : it->second) + 1.0) / (total + vocab);
  };
  const double lambda = opts.interpolation;
  auto p_bi = [&](Label h, Label w) {
    auto ct = context_total.find(h);
    if (ct == context_total.end()) return p_uni(w);
    double c = 0.0;
    if (auto row = bigram.find(h); row != bigram.end()) {
      if (auto it = row->second.find(w); it != row->second.end()) c = it->second;
    }
    return lambda * c / ct->second + (1.0 - lambda) * p_uni(w);
  };

  Fst g;
  g.ReserveStates(static_cast<StateId>(labels.size() + 2));
  for (size_t i = 0; i < labels.size() + 2; ++i) g.AddState();
  g.SetStart(kStart);
  g.SetInputSymbols(words);
  g.SetOutputSymbols(words);

  auto add_context = [&](StateId s, Label h) {
    for (Label w : labels) {
      g.AddArc(s, Arc{w, w, Weight(-std::log(p_bi(h, w))), state_of[w]});
    }
    if (lambda > 0.0) {
      g.AddArc(s, Arc{kEpsilon, kEpsilon, Weight(-std::log(1.0 - lambda)),
                      kUnigram});
    }
    g.SetFinal(s, Weight(-std::log(p_bi(h, kEnd))));
  };
  add_context(kStart, kEpsilon);
  for (Label h : labels) add_context(state_of[h], h);
  for (Label w : labels) {
    g.AddArc(kUnigram, Arc{w, w, Weight(-std::log(p_uni(w))), state_of[w]});
  }
  g.SetFinal(kUnigram, Weight(-std::log(p_uni(kEnd))));
  g.AddMetadata("bigram lambda=" + std::to_string(lambda) +
                " sentences=" + std::to_string(sentences.size()));
  return ArcSort(g, SortSide::kInput);
}

std::shared_ptr<SymbolTable> BuildCharTable(const SymbolTable &words) {
  std::set<char> chars;
  for (Label l : words.Labels()) {
    for (char c : words.Word(l)) chars.insert(c);
  }
  auto table = std::make_shared<SymbolTable>();
  table->AddSymbol(kWordEnd);
  for (char c : chars) table->AddSymbol(std::string(1, c));
  return table;
}

Fst BuildCharLexicon(std::shared_ptr<const SymbolTable> words,
                     std::shared_ptr<const SymbolTable> chars) {
  Fst l;
  const StateId root = l.AddState();
  l.SetStart(root);
  l.SetFinal(root, Weight::One());
  l.SetInputSymbols(chars);
  l.SetOutputSymbols(words);
  const Label end = chars->Id(kWordEnd);
  for (Label w : words->Labels()) {
    const std::string &word = words->Word(w);
    StateId cur = root;
    for (size_t i = 0; i < word.size(); ++i) {
      StateId next = l.AddState();
      l.AddArc(cur, Arc{chars->Id(std::string(1, word[i])),
                        i == 0 ? w : kEpsilon, Weight::One(), next});
      cur = next;
    }
    l.AddArc(cur, Arc{end, word.empty() ? w : kEpsilon, Weight::One(), root});
  }
  return ArcSort(l, SortSide::kInput);
}

Fst BuildConfusionFst(const std::vector<AcousticHypothesis> &hyps,
                      std::shared_ptr<const SymbolTable> chars) {
  Fst u;
  const StateId start = u.AddState();
  u.SetStart(start);
  u.SetInputSymbols(chars);
  u.SetOutputSymbols(chars);
  const Label end = chars->Id(kWordEnd);
  for (const auto &hyp : hyps) {
    if (hyp.words.empty() || hyp.words.size() != hyp.acoustic.size()) {
      throw ValidationError(
          "confusion hypothesis needs words and one cost per word");
    }
    StateId cur = start;
    for (size_t i = 0; i < hyp.words.size(); ++i) {
      const std::string &word = hyp.words[i];
      for (size_t c = 0; c <= word.size(); ++c) {
        Label ch = c < word.size() ? chars->Id(std::string(1, word[c])) : end;
        StateId next = u.AddState();
        u.AddArc(cur, Arc{ch, ch, Weight(c == 0 ? hyp.acoustic[i] : 0.0), next});
        cur = next;
      }
    }
    u.SetFinal(cur, Weight::One());
  }
  return u;
}

Lattice ToyDecode(const Fst &confusion, const Fst &lexicon, const Fst &grammar,
                  const std::string &utterance_id) {
  ComposeTrace ul_trace, full_trace;
  const Fst ul = Compose(confusion, lexicon, &ul_trace);
  const Fst full = Compose(ul, grammar, &full_trace);

  Lattice lat(utterance_id, grammar.OutputSymbols());
  for (StateId s = 0; s < full.NumStates(); ++s) lat.AddState();
  if (!full.Empty()) lat.SetStart(full.Start());
  for (StateId s = 0; s < full.NumStates(); ++s) {
    const auto [ul_state, g_state] = full_trace.states[s];
    const StateId u_state = ul_trace.states[ul_state].a;
    auto arcs = full.Arcs(s);
    for (size_t i = 0; i < arcs.size(); ++i) {
      const auto origin = full_trace.arcs[s][i];
      double acoustic = 0.0, graph = 0.0;
      if (origin.a_arc >= 0) {
        const int u_arc = ul_trace.arcs[ul_state][origin.a_arc].a_arc;
        if (u_arc >= 0) acoustic = confusion.Arcs(u_state)[u_arc].weight.Value();
      }
      if (origin.b_arc >= 0) {
        graph = grammar.Arcs(g_state)[origin.b_arc].weight.Value();
      }
      lat.AddArc(s, LatticeArc{arcs[i].olabel, acoustic, graph,
                               arcs[i].nextstate});
    }
    if (full.IsFinal(s)) {
      lat.SetFinal(s, LatticeCost{confusion.Final(u_state).Value(),
                                  grammar.Final(g_state).Value()});
    }
  }
  lat.Trim();
  return lat;
}

}  // namespace callboost
