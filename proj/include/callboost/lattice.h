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
// First-pass word lattices and second-pass rescoring against a biasing FST.
//
// Text format, one lattice per "# utt" header:
//
//   # utt <utterance id>
//   src<TAB>dst<TAB>word<TAB>acoustic<TAB>graph
//   state<TAB>acoustic<TAB>graph
//
// Words are spelled out ("<eps>" for epsilon). The source of the first arc or
// final line is the start state.

#ifndef CALLBOOST_LATTICE_H_
#define CALLBOOST_LATTICE_H_

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "callboost/fst.h"

namespace callboost {

struct LatticeArc {
  Label word = kEpsilon;
  double acoustic = 0.0;
  double graph = 0.0;
  StateId nextstate = kNoStateId;

  friend bool operator==(const LatticeArc &, const LatticeArc &) = default;
};

struct LatticeCost {
  double acoustic = 0.0;
  double graph = 0.0;

  friend bool operator==(const LatticeCost &, const LatticeCost &) = default;
};

// Acyclic word graph with separate acoustic and graph costs.
class Lattice {
 public:
  Lattice() = default;
  Lattice(std::string utterance_id, std::shared_ptr<const SymbolTable> syms)
      : utterance_id_(std::move(utterance_id)), syms_(std::move(syms)) {}

  StateId AddState();
  void SetStart(StateId s);
  void SetFinal(StateId s, LatticeCost cost);
  void AddArc(StateId s, const LatticeArc &arc);

  StateId Start() const { return start_; }
  StateId NumStates() const { return static_cast<StateId>(states_.size()); }
  bool Empty() const { return start_ == kNoStateId; }
  const std::vector<LatticeArc> &Arcs(StateId s) const {
    return states_.at(s).arcs;
  }
  const std::optional<LatticeCost> &Final(StateId s) const {
    return states_.at(s).final;
  }

  const std::string &UtteranceId() const { return utterance_id_; }
  void SetUtteranceId(std::string id) { utterance_id_ = std::move(id); }
  const std::shared_ptr<const SymbolTable> &Symbols() const { return syms_; }
  void SetSymbols(std::shared_ptr<const SymbolTable> syms) {
    syms_ = std::move(syms);
  }

  // Checks acyclicity and drops states off every start-to-final path.
  // Throws ValidationError for a cycle.
  void Trim();

  friend bool operator==(const Lattice &a, const Lattice &b) {
    return a.utterance_id_ == b.utterance_id_ && a.start_ == b.start_ &&
           a.states_ == b.states_;
  }

 private:
  struct State {
    std::vector<LatticeArc> arcs;
    std::optional<LatticeCost> final;
    friend bool operator==(const State &, const State &) = default;
  };
  std::string utterance_id_;
  std::shared_ptr<const SymbolTable> syms_;
  std::vector<State> states_;
  StateId start_ = kNoStateId;
};

// Reads every lattice of a stream. Words are interned into `syms`, which the
// returned lattices share. Each lattice is validated and trimmed.
std::vector<Lattice> ReadLattices(std::istream &is, const std::string &source,
                                  const std::shared_ptr<SymbolTable> &syms);
// A single file; without a "# utt" header the id is the file stem.
std::vector<Lattice> ReadLatticeFile(const std::string &path,
                                     const std::shared_ptr<SymbolTable> &syms);
// A directory of <utt_id>.lat files (sorted by name) or one stream file.
std::vector<Lattice> ReadLatticePath(const std::string &path,
                                     const std::shared_ptr<SymbolTable> &syms);
void WriteLattice(const Lattice &lattice, std::ostream &os);

// Acceptor with weight acoustic_scale * acoustic + graph_scale * graph.
// Labels, states and arc order match the lattice.
Fst LatticeToFst(const Lattice &lattice, double acoustic_scale = 1.0,
                 double graph_scale = 1.0);

// Composes the lattice with `bias` and trims. Cost changes from the bias land
// on the graph channel; acoustic costs ride along unchanged. Throws
// EmptyResult when no lattice path survives, which means the bias does not
// cover the lattice vocabulary.
Lattice Rescore(const Lattice &lattice, const Fst &bias);

struct Hypothesis {
  std::vector<std::string> words;
  double cost = 0.0;
};

// Best path under the given scales, epsilons removed. Throws EmptyResult for
// an empty lattice.
Hypothesis BestHypothesis(const Lattice &lattice, double acoustic_scale = 1.0,
                          double graph_scale = 1.0);

}  // namespace callboost

#endif  // CALLBOOST_LATTICE_H_
