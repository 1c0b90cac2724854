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
#include <cmath>
#include <deque>
#include <limits>

#include "callboost/error.h"
#include "callboost/fst_ops.h"

namespace callboost {
namespace {

std::vector<bool> Accessible(const Fst &fst) {
  std::vector<bool> seen(fst.NumStates(), false);
  if (fst.Empty()) return seen;
  std::vector<StateId> stack{fst.Start()};
  seen[fst.Start()] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc &arc : fst.Arcs(s)) {
      if (!seen[arc.nextstate]) {
        seen[arc.nextstate] = true;
        stack.push_back(arc.nextstate);
      }
    }
  }
  return seen;
}

std::vector<bool> Coaccessible(const Fst &fst) {
  const StateId n = fst.NumStates();
  std::vector<std::vector<StateId>> preds(n);
  for (StateId s = 0; s < n; ++s) {
    for (const Arc &arc : fst.Arcs(s)) preds[arc.nextstate].push_back(s);
  }
  std::vector<bool> seen(n, false);
  std::vector<StateId> stack;
  for (StateId s = 0; s < n; ++s) {
    if (fst.IsFinal(s)) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : preds[s]) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

// Kahn order of the states flagged in `keep`, following only arcs that pass
// `use_arc`. Returns nullopt when those arcs contain a cycle.
template <typename ArcPred>
std::optional<std::vector<StateId>> TopologicalOrder(
    const Fst &fst, const std::vector<bool> &keep, ArcPred use_arc) {
  const StateId n = fst.NumStates();
  std::vector<int> indegree(n, 0);
  size_t kept = 0;
  for (StateId s = 0; s < n; ++s) {
    if (!keep[s]) continue;
    ++kept;
    for (const Arc &arc : fst.Arcs(s)) {
      if (keep[arc.nextstate] && use_arc(arc)) ++indegree[arc.nextstate];
    }
  }
  std::vector<StateId> order;
  order.reserve(kept);
  std::deque<StateId> ready;
  for (StateId s = 0; s < n; ++s) {
    if (keep[s] && indegree[s] == 0) ready.push_back(s);
  }
  while (!ready.empty()) {
    StateId s = ready.front();
    ready.pop_front();
    order.push_back(s);
    for (const Arc &arc : fst.Arcs(s)) {
      if (!keep[arc.nextstate] || !use_arc(arc)) continue;
      if (--indegree[arc.nextstate] == 0) ready.push_back(arc.nextstate);
    }
  }
  if (order.size() != kept) return std::nullopt;
  return order;
}

constexpr double kTightTolerance = 1e-9;

bool Tight(double candidate, double best) {
  return candidate - best <=
         kTightTolerance * std::max(1.0, std::fabs(best));
}

}  // namespace

bool IsAcyclic(const Fst &fst) {
  return TopologicalOrder(fst, Accessible(fst), [](const Arc &) {
           return true;
         }).has_value();
}

void CheckNoEpsilonCycles(const Fst &fst, SortSide side) {
  std::vector<bool> all(fst.NumStates(), true);
  auto order = TopologicalOrder(fst, all, [side](const Arc &arc) {
    return (side == SortSide::kInput ? arc.ilabel : arc.olabel) == kEpsilon;
  });
  if (!order) {
    throw ValidationError(std::string("epsilon cycle on the ") +
                          (side == SortSide::kInput ? "input" : "output") +
                          " side");
  }
}

std::optional<Path> ShortestPath(const Fst &fst) {
  if (fst.Empty()) return std::nullopt;
  const StateId n = fst.NumStates();
  const double inf = Weight::Zero().Value();
  const std::vector<bool> reach = Accessible(fst);

  // dist[s]: cheapest cost from s to a final state, final weight included.
  std::vector<double> dist(n, inf);
  auto order =
      TopologicalOrder(fst, reach, [](const Arc &) { return true; });
  const bool acyclic = order.has_value();
  auto relax = [&](StateId s) {
    double best = fst.Final(s).Value();
    for (const Arc &arc : fst.Arcs(s)) {
      double d = dist[arc.nextstate];
      if (d != inf) best = std::min(best, arc.weight.Value() + d);
    }
    return best;
  };
  if (acyclic) {
    for (auto it = order->rbegin(); it != order->rend(); ++it) {
      dist[*it] = relax(*it);
    }
  } else {
    // Bellman-Ford on the reachable part; an improvement still happening
    // after n rounds means a negative cycle feeds some final state.
    bool changed = true;
    for (StateId round = 0; changed; ++round) {
      if (round > n) throw NegativeCycleError();
      changed = false;
      for (StateId s = n - 1; s >= 0; --s) {
        if (!reach[s]) continue;
        double d = relax(s);
        if (d < dist[s] &&
            (dist[s] == inf ||
             dist[s] - d > kTightTolerance * std::max(1.0, std::fabs(d)))) {
          dist[s] = d;
          changed = true;
        }
      }
    }
  }
  if (dist[fst.Start()] == inf) return std::nullopt;

  // On cyclic machines restrict to arcs that strictly shorten the hop count
  // to a tight final state.
  std::vector<int> hops;
  if (!acyclic) {
    const int unset = std::numeric_limits<int>::max();
    hops.assign(n, unset);
    std::vector<std::vector<StateId>> tight_preds(n);
    std::deque<StateId> queue;
    for (StateId s = 0; s < n; ++s) {
      if (!reach[s] || dist[s] == inf) continue;
      if (fst.IsFinal(s) && Tight(fst.Final(s).Value(), dist[s])) {
        hops[s] = 0;
        queue.push_back(s);
      }
      for (const Arc &arc : fst.Arcs(s)) {
        double d = dist[arc.nextstate];
        if (d != inf && Tight(arc.weight.Value() + d, dist[s])) {
          tight_preds[arc.nextstate].push_back(s);
        }
      }
    }
    while (!queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      for (StateId p : tight_preds[s]) {
        if (hops[p] == unset) {
          hops[p] = hops[s] + 1;
          queue.push_back(p);
        }
      }
    }
  }

  Path path;
  StateId s = fst.Start();
  double total = 0.0;
  path.states.push_back(s);
  for (;;) {
    if (fst.IsFinal(s) && Tight(fst.Final(s).Value(), dist[s])) {
      total += fst.Final(s).Value();
      break;
    }
    auto arcs = fst.Arcs(s);
    size_t chosen = arcs.size();
    for (size_t i = 0; i < arcs.size(); ++i) {
      double d = dist[arcs[i].nextstate];
      if (d == inf || !Tight(arcs[i].weight.Value() + d, dist[s])) continue;
      if (!acyclic && hops[arcs[i].nextstate] != hops[s] - 1) continue;
      chosen = i;
      break;
    }
    if (chosen == arcs.size()) {
      throw ValidationError("shortest path: inconsistent distances");
    }
    const Arc &arc = arcs[chosen];
    total += arc.weight.Value();
    path.arc_indices.push_back(chosen);
    if (arc.ilabel != kEpsilon) path.ilabels.push_back(arc.ilabel);
    if (arc.olabel != kEpsilon) path.olabels.push_back(arc.olabel);
    s = arc.nextstate;
    path.states.push_back(s);
  }
  path.cost = Weight(total);
  return path;
}

std::vector<bool> UsefulStates(const Fst &fst) {
  std::vector<bool> acc = Accessible(fst);
  const std::vector<bool> coacc = Coaccessible(fst);
  for (size_t s = 0; s < acc.size(); ++s) acc[s] = acc[s] && coacc[s];
  return acc;
}

Fst Connect(const Fst &fst) {
  const std::vector<bool> acc = Accessible(fst);
  const std::vector<bool> coacc = Coaccessible(fst);
  Fst out;
  out.SetInputSymbols(fst.InputSymbols());
  out.SetOutputSymbols(fst.OutputSymbols());
  out.SetMetadata(fst.Metadata());
  if (fst.Empty() || !coacc[fst.Start()]) return out;

  std::vector<StateId> remap(fst.NumStates(), kNoStateId);
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (acc[s] && coacc[s]) remap[s] = out.AddState();
  }
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (remap[s] == kNoStateId) continue;
    if (fst.IsFinal(s)) out.SetFinal(remap[s], fst.Final(s));
    for (const Arc &arc : fst.Arcs(s)) {
      if (remap[arc.nextstate] == kNoStateId) continue;
      Arc copy = arc;
      copy.nextstate = remap[arc.nextstate];
      out.AddArc(remap[s], copy);
    }
  }
  out.SetStart(remap[fst.Start()]);
  return out;
}

Fst ArcSort(const Fst &fst, SortSide side) {
  Fst out = fst;
  for (StateId s = 0; s < out.NumStates(); ++s) {
    auto &arcs = out.MutableArcs(s);
    if (side == SortSide::kInput) {
      std::stable_sort(arcs.begin(), arcs.end(), [](const Arc &x, const Arc &y) {
        return x.ilabel < y.ilabel;
      });
    } else {
      std::stable_sort(arcs.begin(), arcs.end(), [](const Arc &x, const Arc &y) {
        return x.olabel < y.olabel;
      });
    }
  }
  return out;
}

bool IsArcSorted(const Fst &fst, SortSide side) {
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    auto arcs = fst.Arcs(s);
    for (size_t i = 1; i < arcs.size(); ++i) {
      Label prev = side == SortSide::kInput ? arcs[i - 1].ilabel : arcs[i - 1].olabel;
      Label cur = side == SortSide::kInput ? arcs[i].ilabel : arcs[i].olabel;
      if (cur < prev) return false;
    }
  }
  return true;
}

}  // namespace callboost
