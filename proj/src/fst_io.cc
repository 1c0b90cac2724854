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

#include "callboost/fst_io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "callboost/error.h"
#include "callboost/text_util.h"

namespace callboost {
namespace {

void WriteState(const Fst &fst, StateId s, std::ostream &os) {
  for (const Arc &arc : fst.Arcs(s)) {
    os << s << '\t' << arc.nextstate << '\t' << arc.ilabel << '\t'
       << arc.olabel << '\t' << FormatDouble(arc.weight.Value()) << '\n';
  }
  if (fst.IsFinal(s)) {
    os << s << '\t' << FormatDouble(fst.Final(s).Value()) << '\n';
  } else if (fst.NumArcs(s) == 0) {
    os << s << '\t' << FormatDouble(Weight::Zero().Value()) << '\n';
  }
}

StateId ParseState(const std::string &field, const std::string &source,
                   int lineno) {
  auto v = ParseInt(field);
  if (!v || *v < 0 || *v > 100000000) {
    throw ParseError(source, lineno, "bad state id '" + field + "'");
  }
  return static_cast<StateId>(*v);
}

Label ParseLabel(const std::string &field, const SymbolTable *syms,
                 const std::string &source, int lineno) {
  auto v = ParseInt(field);
  if (!v || *v < 0 || *v > std::numeric_limits<Label>::max()) {
    throw ParseError(source, lineno, "bad label '" + field + "'");
  }
  Label l = static_cast<Label>(*v);
  if (syms && !syms->FindWord(l)) {
    throw ParseError(source, lineno,
                     "label " + field + " missing from symbol table");
  }
  return l;
}

Weight ParseWeight(const std::string &field, const std::string &source,
                   int lineno) {
  auto v = ParseDouble(field);
  if (!v || std::isnan(*v) || *v == -std::numeric_limits<double>::infinity()) {
    throw ParseError(source, lineno, "bad weight '" + field + "'");
  }
  return Weight(*v);
}

}  // namespace

void WriteFstText(const Fst &fst, std::ostream &os) {
  for (const auto &line : fst.Metadata()) os << "# " << line << '\n';
  if (fst.Empty()) return;
  WriteState(fst, fst.Start(), os);
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (s != fst.Start()) WriteState(fst, s, os);
  }
}

void WriteFstFile(const Fst &fst, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  WriteFstText(fst, out);
  if (!out) throw IoError("write failed: " + path);
}

Fst ReadFstText(std::istream &is, const std::string &source,
                std::shared_ptr<const SymbolTable> isyms,
                std::shared_ptr<const SymbolTable> osyms) {
  Fst fst;
  fst.SetInputSymbols(isyms);
  fst.SetOutputSymbols(osyms);
  std::vector<std::string> metadata;
  std::string line;
  int lineno = 0;
  bool have_start = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!have_start && StartsWith(line, "#")) {
      std::string body = line.substr(1);
      if (StartsWith(body, " ")) body = body.substr(1);
      metadata.push_back(body);
      continue;
    }
    auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (fields.size() == 1 || fields.size() == 2) {
      StateId s = ParseState(fields[0], source, lineno);
      fst.ReserveStates(s + 1);
      if (!have_start) {
        fst.SetStart(s);
        have_start = true;
      }
      Weight w = fields.size() == 2 ? ParseWeight(fields[1], source, lineno)
                                    : Weight::One();
      if (!w.IsZero()) fst.SetFinal(s, w);
    } else if (fields.size() == 4 || fields.size() == 5) {
      StateId src = ParseState(fields[0], source, lineno);
      StateId dst = ParseState(fields[1], source, lineno);
      Label il = ParseLabel(fields[2], isyms.get(), source, lineno);
      Label ol = ParseLabel(fields[3], osyms.get(), source, lineno);
      Weight w = fields.size() == 5 ? ParseWeight(fields[4], source, lineno)
                                    : Weight::One();
      if (!w.IsFinite()) {
        throw ParseError(source, lineno, "arc weight must be finite");
      }
      fst.ReserveStates(std::max(src, dst) + 1);
      if (!have_start) {
        fst.SetStart(src);
        have_start = true;
      }
      fst.AddArc(src, Arc{il, ol, w, dst});
    } else {
      throw ParseError(source, lineno,
                       "expected 1-2 fields (final) or 4-5 fields (arc)");
    }
  }
  fst.SetMetadata(std::move(metadata));
  return fst;
}

Fst ReadFstFile(const std::string &path,
                std::shared_ptr<const SymbolTable> isyms,
                std::shared_ptr<const SymbolTable> osyms) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return ReadFstText(in, path, std::move(isyms), std::move(osyms));
}

}  // namespace callboost
