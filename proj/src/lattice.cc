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

#include "callboost/lattice.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include "callboost/error.h"
#include "callboost/fst_ops.h"
#include "callboost/text_util.h"

namespace callboost {
namespace {

constexpr char kUttHeader[] = "# utt";

double ParseCost(const std::string &field, const std::string &source,
                 int lineno) {
  auto v = ParseDouble(field);
  if (!v || !std::isfinite(*v)) {
    throw ParseError(source, lineno, "bad cost '" + field + "'");
  }
  return *v;
}

StateId ParseStateId(const std::string &field, const std::string &source,
                     int lineno) {
  auto v = ParseInt(field);
  if (!v || *v < 0 || *v > 100000000) {
    throw ParseError(source, lineno, "bad state id '" + field + "'");
  }
  return static_cast<StateId>(*v);
}

void Reserve(Lattice &lattice, StateId n) {
  while (lattice.NumStates() < n) lattice.AddState();
}

}  // namespace

StateId Lattice::AddState() {
  states_.emplace_back();
  return static_cast<StateId>(states_.size() - 1);
}

void Lattice::SetStart(StateId s) {
  if (s < 0 || s >= NumStates()) {
    throw ValidationError("lattice start state out of range");
  }
  start_ = s;
}

void Lattice::SetFinal(StateId s, LatticeCost cost) {
  if (!std::isfinite(cost.acoustic) || !std::isfinite(cost.graph)) {
    throw ValidationError("lattice final costs must be finite");
  }
  states_.at(s).final = cost;
}

void Lattice::AddArc(StateId s, const LatticeArc &arc) {
  if (s < 0 || s >= NumStates() || arc.nextstate < 0 ||
      arc.nextstate >= NumStates()) {
    throw ValidationError("lattice arc references a missing state");
  }
  if (!std::isfinite(arc.acoustic) || !std::isfinite(arc.graph)) {
    throw ValidationError("lattice arc costs must be finite");
  }
  states_[s].arcs.push_back(arc);
}

void Lattice::Trim() {
  const Fst fst = LatticeToFst(*this);
  if (!IsAcyclic(fst)) {
    throw ValidationError("lattice " + utterance_id_ + " has a cycle");
  }
  const std::vector<bool> keep = UsefulStates(fst);
  std::vector<StateId> remap(states_.size(), kNoStateId);
  std::vector<State> kept;
  for (size_t s = 0; s < states_.size(); ++s) {
    if (keep[s]) {
      remap[s] = static_cast<StateId>(kept.size());
      kept.push_back(std::move(states_[s]));
    }
  }
  for (auto &state : kept) {
    std::vector<LatticeArc> arcs;
    for (const auto &arc : state.arcs) {
      if (remap[arc.nextstate] == kNoStateId) continue;
      arcs.push_back(arc);
      arcs.back().nextstate = remap[arc.nextstate];
    }
    state.arcs = std::move(arcs);
  }
  start_ = start_ == kNoStateId ? kNoStateId : remap[start_];
  states_ = std::move(kept);
  if (start_ == kNoStateId) states_.clear();
}

std::vector<Lattice> ReadLattices(std::istream &is, const std::string &source,
                                  const std::shared_ptr<SymbolTable> &syms) {
  std::vector<Lattice> out;
  std::optional<Lattice> cur;
  bool have_start = false;
  auto finish = [&] {
    if (!cur) return;
    cur->Trim();
    out.push_back(std::move(*cur));
    cur.reset();
  };
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (StartsWith(line, kUttHeader)) {
      finish();
      std::string id = Trim(line.substr(sizeof(kUttHeader) - 1));
      if (id.empty()) throw ParseError(source, lineno, "missing utterance id");
      cur.emplace(id, syms);
      have_start = false;
      continue;
    }
    if (StartsWith(line, "#")) continue;
    auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (!cur) cur.emplace("", syms);
    if (fields.size() == 5) {
      StateId src = ParseStateId(fields[0], source, lineno);
      StateId dst = ParseStateId(fields[1], source, lineno);
      Label word = fields[2] == kEpsilonSymbol ? kEpsilon
                                               : syms->AddSymbol(fields[2]);
      double ac = ParseCost(fields[3], source, lineno);
      double gr = ParseCost(fields[4], source, lineno);
      Reserve(*cur, std::max(src, dst) + 1);
      if (!have_start) {
        cur->SetStart(src);
        have_start = true;
      }
      cur->AddArc(src, LatticeArc{word, ac, gr, dst});
    } else if (fields.size() == 3) {
      StateId s = ParseStateId(fields[0], source, lineno);
      Reserve(*cur, s + 1);
      if (!have_start) {
        cur->SetStart(s);
        have_start = true;
      }
      cur->SetFinal(s, LatticeCost{ParseCost(fields[1], source, lineno),
                                   ParseCost(fields[2], source, lineno)});
    } else {
      throw ParseError(source, lineno,
                       "expected 5 fields (arc) or 3 fields (final)");
    }
  }
  finish();
  return out;
}

std::vector<Lattice> ReadLatticeFile(const std::string &path,
                                     const std::shared_ptr<SymbolTable> &syms) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lattice file " + path);
  auto lattices = ReadLattices(in, path, syms);
  for (auto &l : lattices) {
    if (l.UtteranceId().empty()) {
      l.SetUtteranceId(std::filesystem::path(path).stem().string());
    }
  }
  return lattices;
}

std::vector<Lattice> ReadLatticePath(const std::string &path,
                                     const std::shared_ptr<SymbolTable> &syms) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(path, ec)) return ReadLatticeFile(path, syms);
  std::vector<std::string> files;
  for (const auto &entry : fs::directory_iterator(path, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".lat") {
      files.push_back(entry.path().string());
    }
  }
  if (ec) throw IoError("cannot list " + path);
  std::sort(files.begin(), files.end());
  std::vector<Lattice> out;
  for (const auto &file : files) {
    for (auto &l : ReadLatticeFile(file, syms)) out.push_back(std::move(l));
  }
  return out;
}

void WriteLattice(const Lattice &lattice, std::ostream &os) {
  os << kUttHeader << ' ' << lattice.UtteranceId() << '\n';
  if (lattice.Empty()) return;
  const SymbolTable &syms = *lattice.Symbols();
  auto write_state = [&](StateId s) {
    for (const auto &arc : lattice.Arcs(s)) {
      os << s << '\t' << arc.nextstate << '\t'
         << (arc.word == kEpsilon ? std::string(kEpsilonSymbol)
                                  : syms.Word(arc.word))
         << '\t' << FormatDouble(arc.acoustic) << '\t'
         << FormatDouble(arc.graph) << '\n';
    }
    if (const auto &f = lattice.Final(s)) {
      os << s << '\t' << FormatDouble(f->acoustic) << '\t'
         << FormatDouble(f->graph) << '\n';
    }
  };
  write_state(lattice.Start());
  for (StateId s = 0; s < lattice.NumStates(); ++s) {
    if (s != lattice.Start()) write_state(s);
  }
}

Fst LatticeToFst(const Lattice &lattice, double acoustic_scale,
                 double graph_scale) {
  Fst fst;
  fst.SetInputSymbols(lattice.Symbols());
  fst.SetOutputSymbols(lattice.Symbols());
  for (StateId s = 0; s < lattice.NumStates(); ++s) fst.AddState();
  if (lattice.Empty()) return fst;
  fst.SetStart(lattice.Start());
  for (StateId s = 0; s < lattice.NumStates(); ++s) {
    for (const auto &arc : lattice.Arcs(s)) {
      double w = acoustic_scale * arc.acoustic + graph_scale * arc.graph;
      fst.AddArc(s, Arc{arc.word, arc.word, Weight(w), arc.nextstate});
    }
    if (const auto &f = lattice.Final(s)) {
      fst.SetFinal(s, Weight(acoustic_scale * f->acoustic +
                             graph_scale * f->graph));
    }
  }
  return fst;
}

Lattice Rescore(const Lattice &lattice, const Fst &bias) {
  // Graph channel only, so every composed weight is graph + bias delta.
  const Fst graph = LatticeToFst(lattice, 0.0, 1.0);
  ComposeTrace trace;
  const Fst composed = Compose(graph, bias, &trace);

  Lattice out(lattice.UtteranceId(),
              bias.OutputSymbols() ? bias.OutputSymbols() : lattice.Symbols());
  for (StateId s = 0; s < composed.NumStates(); ++s) out.AddState();
  if (!composed.Empty()) out.SetStart(composed.Start());
  for (StateId s = 0; s < composed.NumStates(); ++s) {
    const StateId src = trace.states[s].a;
    auto arcs = composed.Arcs(s);
    for (size_t i = 0; i < arcs.size(); ++i) {
      const int a_arc = trace.arcs[s][i].a_arc;
      const double ac = a_arc >= 0 ? lattice.Arcs(src)[a_arc].acoustic : 0.0;
      out.AddArc(s, LatticeArc{arcs[i].olabel, ac, arcs[i].weight.Value(),
                               arcs[i].nextstate});
    }
    if (composed.IsFinal(s)) {
      out.SetFinal(s, LatticeCost{lattice.Final(src)->acoustic,
                                  composed.Final(s).Value()});
    }
  }
  out.Trim();
  if (out.Empty()) {
    throw EmptyResult("EmptyRescore: no path of lattice " +
                      lattice.UtteranceId() +
                      " survives the bias; check the symbol tables");
  }
  return out;
}

Hypothesis BestHypothesis(const Lattice &lattice, double acoustic_scale,
                          double graph_scale) {
  auto path = ShortestPath(LatticeToFst(lattice, acoustic_scale, graph_scale));
  if (!path) {
    throw EmptyResult("EmptyLattice: lattice " + lattice.UtteranceId() +
                      " has no complete path");
  }
  Hypothesis hyp;
  hyp.cost = path->cost.Value();
  for (Label l : path->olabels) hyp.words.push_back(lattice.Symbols()->Word(l));
  return hyp;
}

}  // namespace callboost
