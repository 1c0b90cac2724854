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

#include "callboost/symbol_table.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "callboost/error.h"
#include "callboost/text_util.h"

namespace callboost {

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol, kEpsilon); }

Label SymbolTable::AddSymbol(std::string_view word) {
  if (auto id = Find(word)) return *id;
  Label id = next_id_;
  AddSymbol(word, id);
  return id;
}

void SymbolTable::AddSymbol(std::string_view word, Label id) {
  if (id < 0) throw ValidationError("negative symbol id for " + std::string(word));
  if (word.empty()) throw ValidationError("empty symbol");
  auto wit = by_word_.find(std::string(word));
  auto iit = by_id_.find(id);
  if (wit != by_word_.end() && iit != by_id_.end() && wit->second == id) return;
  if (wit != by_word_.end()) {
    throw ValidationError("symbol '" + std::string(word) +
                          "' already bound to id " + std::to_string(wit->second));
  }
  if (iit != by_id_.end()) {
    throw ValidationError("symbol id " + std::to_string(id) +
                          " already bound to '" + iit->second + "'");
  }
  by_id_.emplace(id, std::string(word));
  by_word_.emplace(std::string(word), id);
  if (id >= next_id_) next_id_ = id + 1;
}

std::optional<Label> SymbolTable::Find(std::string_view word) const {
  auto it = by_word_.find(std::string(word));
  if (it == by_word_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> SymbolTable::FindWord(Label id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

Label SymbolTable::Id(std::string_view word) const {
  auto id = Find(word);
  if (!id) throw ValidationError("word not in symbol table: " + std::string(word));
  return *id;
}

const std::string &SymbolTable::Word(Label id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) {
    throw ValidationError("symbol id not in table: " + std::to_string(id));
  }
  return it->second;
}

std::vector<Label> SymbolTable::Labels() const {
  std::vector<Label> out;
  out.reserve(by_id_.size());
  for (const auto &[id, word] : by_id_) {
    if (id != kEpsilon) out.push_back(id);
  }
  return out;
}

bool SymbolTable::CompatibleWith(const SymbolTable &other) const {
  const SymbolTable &small = Size() <= other.Size() ? *this : other;
  const SymbolTable &large = Size() <= other.Size() ? other : *this;
  for (const auto &[id, word] : small.by_id_) {
    auto it = large.by_id_.find(id);
    if (it == large.by_id_.end() || it->second != word) return false;
  }
  return true;
}

void SymbolTable::WriteText(std::ostream &os) const {
  for (const auto &[id, word] : by_id_) os << word << '\t' << id << '\n';
}

SymbolTable SymbolTable::ReadText(std::istream &is, const std::string &source) {
  SymbolTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 2) {
      throw ParseError(source, lineno, "expected 'word<TAB>id'");
    }
    Label id = 0;
    const auto &f = fields[1];
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), id);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
      throw ParseError(source, lineno, "bad symbol id '" + std::string(f) + "'");
    }
    try {
      table.AddSymbol(fields[0], id);
    } catch (const ValidationError &e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  return table;
}

SymbolTable SymbolTable::ReadFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open symbol table " + path);
  return ReadText(in, path);
}

void SymbolTable::WriteFile(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write symbol table " + path);
  WriteText(out);
}

}  // namespace callboost
