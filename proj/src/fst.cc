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

#include "callboost/fst.h"

#include <cmath>

#include "callboost/error.h"

namespace callboost {

StateId Fst::AddState() {
  states_.emplace_back();
  return static_cast<StateId>(states_.size() - 1);
}

void Fst::ReserveStates(StateId n) {
  while (NumStates() < n) AddState();
}

void Fst::SetStart(StateId s) {
  if (s < 0 || s >= NumStates()) {
    throw ValidationError("start state " + std::to_string(s) + " out of range");
  }
  start_ = s;
}

void Fst::SetFinal(StateId s, Weight w) {
  if (std::isnan(w.Value()) || (std::isinf(w.Value()) && w.Value() < 0)) {
    throw ValidationError("final weight of state " + std::to_string(s) +
                          " must be finite");
  }
  states_.at(s).final = w;
}

void Fst::AddArc(StateId s, const Arc &arc) {
  if (s < 0 || s >= NumStates() || arc.nextstate < 0 ||
      arc.nextstate >= NumStates()) {
    throw ValidationError("arc " + std::to_string(s) + " -> " +
                          std::to_string(arc.nextstate) +
                          " references a missing state");
  }
  if (!arc.weight.IsFinite()) {
    throw ValidationError("arc weight out of state " + std::to_string(s) +
                          " must be finite");
  }
  states_[s].arcs.push_back(arc);
}

size_t Fst::TotalArcs() const {
  size_t n = 0;
  for (const auto &st : states_) n += st.arcs.size();
  return n;
}

bool Fst::IsAcceptor() const {
  for (const auto &st : states_) {
    for (const auto &arc : st.arcs) {
      if (arc.ilabel != arc.olabel) return false;
    }
  }
  return true;
}

Fst LinearAcceptor(std::span<const Label> labels) {
  Fst fst;
  StateId s = fst.AddState();
  fst.SetStart(s);
  for (Label l : labels) {
    StateId t = fst.AddState();
    fst.AddArc(s, Arc{l, l, Weight::One(), t});
    s = t;
  }
  fst.SetFinal(s, Weight::One());
  return fst;
}

}  // namespace callboost
