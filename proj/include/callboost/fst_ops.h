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

#ifndef CALLBOOST_FST_OPS_H_
#define CALLBOOST_FST_OPS_H_

#include <optional>
#include <vector>

#include "callboost/fst.h"

namespace callboost {

enum class SortSide { kInput, kOutput };

// Where a composed state or arc came from. An arc index of -1 means that
// operand stayed put while the other one followed an epsilon arc.
struct ComposeTrace {
  struct StatePair {
    StateId a;
    StateId b;
  };
  struct ArcOrigin {
    int a_arc;
    int b_arc;
  };
  std::vector<StatePair> states;
  // Parallel to the arc lists of the composed machine.
  std::vector<std::vector<ArcOrigin>> arcs;
};

// Composition with an epsilon-sequencing filter: within an epsilon run the
// left operand's output-epsilon moves precede the right operand's
// input-epsilon moves, so each successful path is built exactly once.
// Operands must not contain epsilon cycles on the composed side. Only states
// reachable from the start pair are built; the result is not trimmed.
// Throws ValidationError when the symbol tables describe different
// universes. An empty intersection gives a machine with no final states.
Fst Compose(const Fst &a, const Fst &b, ComposeTrace *trace = nullptr);

struct Path {
  std::vector<StateId> states;      // start ... last, size = arcs + 1
  std::vector<size_t> arc_indices;  // index of each arc in its state's list
  Weight cost;
  std::vector<Label> ilabels;  // epsilons removed
  std::vector<Label> olabels;  // epsilons removed
};

// Minimum-cost start-to-final path. std::nullopt when the language is empty.
// Negative arc costs are fine; a negative cycle that lies on some
// start-to-final path raises NegativeCycleError. Ties are broken toward the
// lexicographically smallest arc-index sequence (stopping beats continuing).
// On cyclic machines the fewest-arc optimal path is taken first so zero-cost
// loops cannot stall extraction.
std::optional<Path> ShortestPath(const Fst &fst);

// Flags states that lie on some start-to-final path.
std::vector<bool> UsefulStates(const Fst &fst);

// Removes states that are not on any start-to-final path. Surviving states
// keep their relative order.
Fst Connect(const Fst &fst);

// Stable sort of every arc list by the chosen label.
Fst ArcSort(const Fst &fst, SortSide side);
bool IsArcSorted(const Fst &fst, SortSide side);

// Cycle test over the part reachable from the start state.
bool IsAcyclic(const Fst &fst);

// Throws ValidationError when epsilon arcs on the given side form a cycle.
void CheckNoEpsilonCycles(const Fst &fst, SortSide side);

}  // namespace callboost

#endif  // CALLBOOST_FST_OPS_H_
