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

#ifndef CALLBOOST_SYMBOL_TABLE_H_
#define CALLBOOST_SYMBOL_TABLE_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace callboost {

using Label = int32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr char kEpsilonSymbol[] = "<eps>";

// Bijection between words and integer ids. Id 0 is always "<eps>". Ids need
// not be dense when read from a file, but AddSymbol always allocates the next
// unused id.
class SymbolTable {
 public:
  SymbolTable();

  // Returns the existing id or allocates a new one.
  Label AddSymbol(std::string_view word);
  // Binds an explicit id; rejects conflicting bindings.
  void AddSymbol(std::string_view word, Label id);

  std::optional<Label> Find(std::string_view word) const;
  std::optional<std::string> FindWord(Label id) const;
  // Throws ValidationError on a missing entry.
  Label Id(std::string_view word) const;
  const std::string &Word(Label id) const;

  bool Contains(std::string_view word) const { return Find(word).has_value(); }
  size_t Size() const { return by_id_.size(); }
  Label AvailableKey() const { return next_id_; }

  // All non-epsilon ids, ascending.
  std::vector<Label> Labels() const;

  // True when every entry of the smaller table is present with the same id in
  // the larger one, i.e. the tables describe one symbol universe.
  bool CompatibleWith(const SymbolTable &other) const;

  void WriteText(std::ostream &os) const;
  static SymbolTable ReadText(std::istream &is, const std::string &source);
  static SymbolTable ReadFile(const std::string &path);
  void WriteFile(const std::string &path) const;

  friend bool operator==(const SymbolTable &a, const SymbolTable &b) {
    return a.by_id_ == b.by_id_;
  }

 private:
  std::map<Label, std::string> by_id_;
  std::unordered_map<std::string, Label> by_word_;
  Label next_id_ = 1;
};

}  // namespace callboost

#endif  // CALLBOOST_SYMBOL_TABLE_H_
