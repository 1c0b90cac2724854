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

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "callboost/error.h"
#include "callboost/fst_ops.h"

namespace callboost {
namespace {

// Filter state 0: either operand may move on epsilon. Filter state 1: the
// right operand has moved alone, so the left one may not until a match.
struct Tuple {
  StateId a;
  StateId b;
  int filter;
  bool operator==(const Tuple &) const = default;
};

struct TupleHash {
  size_t operator()(const Tuple &t) const {
    uint64_t h = static_cast<uint32_t>(t.a);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<uint32_t>(t.b);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<uint32_t>(t.filter);
    return static_cast<size_t>(h ^ (h >> 29));
  }
};

void CheckSymbols(const Fst &a, const Fst &b) {
  const auto &left = a.OutputSymbols();
  const auto &right = b.InputSymbols();
  if (!left || !right || left == right) return;
  if (!left->CompatibleWith(*right)) {
    throw ValidationError(
        "compose: output symbols of the left operand and input symbols of "
        "the right operand disagree");
  }
}

}  // namespace

Fst Compose(const Fst &a, const Fst &b_in, ComposeTrace *trace) {
  CheckSymbols(a, b_in);
  CheckNoEpsilonCycles(a, SortSide::kOutput);
  CheckNoEpsilonCycles(b_in, SortSide::kInput);

  // Unsorted right operands are sorted on a copy; perm maps positions in the
  // copy back to the caller's arc indices for the trace.
  std::optional<Fst> sorted;
  std::vector<std::vector<int>> perm;
  if (!IsArcSorted(b_in, SortSide::kInput)) {
    sorted = b_in;
    perm.resize(b_in.NumStates());
    for (StateId s = 0; s < b_in.NumStates(); ++s) {
      auto arcs = b_in.Arcs(s);
      auto &p = perm[s];
      p.resize(arcs.size());
      for (size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(i);
      std::stable_sort(p.begin(), p.end(), [&](int x, int y) {
        return arcs[x].ilabel < arcs[y].ilabel;
      });
      auto &dst = sorted->MutableArcs(s);
      for (size_t i = 0; i < p.size(); ++i) dst[i] = arcs[p[i]];
    }
  }
  const Fst &b = sorted ? *sorted : b_in;
  auto b_index = [&](StateId s, size_t j) {
    return perm.empty() ? static_cast<int>(j) : perm[s][j];
  };

  Fst out;
  out.SetInputSymbols(a.InputSymbols());
  out.SetOutputSymbols(b.OutputSymbols());
  if (trace) *trace = ComposeTrace{};
  if (a.Empty() || b.Empty()) return out;

  std::unordered_map<Tuple, StateId, TupleHash> ids;
  std::deque<Tuple> queue;
  auto find_or_add = [&](const Tuple &t) {
    auto [it, inserted] = ids.emplace(t, out.NumStates());
    if (inserted) {
      out.AddState();
      queue.push_back(t);
      if (trace) {
        trace->states.push_back({t.a, t.b});
        trace->arcs.emplace_back();
      }
    }
    return it->second;
  };
  auto emit = [&](StateId from, const Arc &arc, int a_arc, int b_arc) {
    out.AddArc(from, arc);
    if (trace) trace->arcs[from].push_back({a_arc, b_arc});
  };

  out.SetStart(find_or_add({a.Start(), b.Start(), 0}));
  while (!queue.empty()) {
    const Tuple t = queue.front();
    queue.pop_front();
    const StateId s = ids.at(t);

    if (a.IsFinal(t.a) && b.IsFinal(t.b)) {
      out.SetFinal(s, Times(a.Final(t.a), b.Final(t.b)));
    }

    auto a_arcs = a.Arcs(t.a);
    auto b_arcs = b.Arcs(t.b);
    for (size_t i = 0; i < a_arcs.size(); ++i) {
      const Arc &arc1 = a_arcs[i];
      if (arc1.olabel == kEpsilon) {
        if (t.filter != 0) continue;
        StateId next = find_or_add({arc1.nextstate, t.b, 0});
        emit(s, Arc{arc1.ilabel, kEpsilon, arc1.weight, next},
             static_cast<int>(i), -1);
        continue;
      }
      auto lo = std::lower_bound(
          b_arcs.begin(), b_arcs.end(), arc1.olabel,
          [](const Arc &arc, Label l) { return arc.ilabel < l; });
      for (auto it = lo; it != b_arcs.end() && it->ilabel == arc1.olabel;
           ++it) {
        StateId next = find_or_add({arc1.nextstate, it->nextstate, 0});
        emit(s,
             Arc{arc1.ilabel, it->olabel, Times(arc1.weight, it->weight), next},
             static_cast<int>(i), b_index(t.b, it - b_arcs.begin()));
      }
    }
    // Input-epsilon arcs sort first on the right operand.
    for (size_t j = 0; j < b_arcs.size() && b_arcs[j].ilabel == kEpsilon; ++j) {
      const Arc &arc2 = b_arcs[j];
      StateId next = find_or_add({t.a, arc2.nextstate, 1});
      emit(s, Arc{kEpsilon, arc2.olabel, arc2.weight, next}, -1,
           b_index(t.b, j));
    }
  }
  return out;
}

}  // namespace callboost
