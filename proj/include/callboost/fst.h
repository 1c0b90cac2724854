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
// Mutable vector-backed weighted transducer over the tropical semiring.
// Grammars, lattices converted for rescoring, and biasing machines all use
// this one representation.

#ifndef CALLBOOST_FST_H_
#define CALLBOOST_FST_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "callboost/symbol_table.h"
#include "callboost/weight.h"

namespace callboost {

using StateId = int32_t;
inline constexpr StateId kNoStateId = -1;

// The source state is the state whose arc list holds the arc.
struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  Weight weight;
  StateId nextstate = kNoStateId;

  friend bool operator==(const Arc &a, const Arc &b) = default;
};

class Fst {
 public:
  StateId AddState();
  // Adds states until NumStates() >= n.
  void ReserveStates(StateId n);
  void SetStart(StateId s);
  // Weight::Zero() clears the final mark. Non-finite costs are rejected.
  void SetFinal(StateId s, Weight w);
  void AddArc(StateId s, const Arc &arc);

  StateId Start() const { return start_; }
  StateId NumStates() const { return static_cast<StateId>(states_.size()); }
  Weight Final(StateId s) const { return states_.at(s).final; }
  bool IsFinal(StateId s) const { return !Final(s).IsZero(); }
  size_t NumArcs(StateId s) const { return states_.at(s).arcs.size(); }
  size_t TotalArcs() const;
  bool Empty() const { return start_ == kNoStateId; }

  std::span<const Arc> Arcs(StateId s) const { return states_.at(s).arcs; }
  std::vector<Arc> &MutableArcs(StateId s) { return states_.at(s).arcs; }

  // True when ilabel == olabel on every arc.
  bool IsAcceptor() const;

  const std::shared_ptr<const SymbolTable> &InputSymbols() const {
    return isyms_;
  }
  const std::shared_ptr<const SymbolTable> &OutputSymbols() const {
    return osyms_;
  }
  void SetInputSymbols(std::shared_ptr<const SymbolTable> syms) {
    isyms_ = std::move(syms);
  }
  void SetOutputSymbols(std::shared_ptr<const SymbolTable> syms) {
    osyms_ = std::move(syms);
  }

  // Free-form annotation lines carried through text serialization.
  const std::vector<std::string> &Metadata() const { return metadata_; }
  void AddMetadata(std::string line) { metadata_.push_back(std::move(line)); }
  void SetMetadata(std::vector<std::string> lines) {
    metadata_ = std::move(lines);
  }

  // Structural equality: start, finals and arc lists (symbol tables ignored).
  friend bool operator==(const Fst &a, const Fst &b) {
    return a.start_ == b.start_ && a.states_ == b.states_;
  }

 private:
  struct State {
    Weight final = Weight::Zero();
    std::vector<Arc> arcs;
    friend bool operator==(const State &, const State &) = default;
  };

  std::vector<State> states_;
  StateId start_ = kNoStateId;
  std::shared_ptr<const SymbolTable> isyms_;
  std::shared_ptr<const SymbolTable> osyms_;
  std::vector<std::string> metadata_;
};

// Single-path acceptor over the given labels, all weights One.
Fst LinearAcceptor(std::span<const Label> labels);

}  // namespace callboost

#endif  // CALLBOOST_FST_H_
