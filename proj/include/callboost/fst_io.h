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
// AT&T-style text format:
//
//   # free-form metadata line        (only before the first arc/final line)
//   src<TAB>dst<TAB>ilabel<TAB>olabel[<TAB>weight]
//   state[<TAB>weight]
//
// Labels are integer ids. The source of the first arc or final line is the
// start state. A missing weight reads as 0. A final line with weight Infinity
// declares a state without making it final; the writer uses it for states
// that would otherwise not appear at all.

#ifndef CALLBOOST_FST_IO_H_
#define CALLBOOST_FST_IO_H_

#include <iosfwd>
#include <string>

#include "callboost/fst.h"

namespace callboost {

void WriteFstText(const Fst &fst, std::ostream &os);
void WriteFstFile(const Fst &fst, const std::string &path);

// Labels are checked against the symbol tables when they are given.
Fst ReadFstText(std::istream &is, const std::string &source,
                std::shared_ptr<const SymbolTable> isyms = nullptr,
                std::shared_ptr<const SymbolTable> osyms = nullptr);
Fst ReadFstFile(const std::string &path,
                std::shared_ptr<const SymbolTable> isyms = nullptr,
                std::shared_ptr<const SymbolTable> osyms = nullptr);

}  // namespace callboost

#endif  // CALLBOOST_FST_IO_H_
