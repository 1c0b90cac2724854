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
// Compressed ICAO callsigns (e.g. DLH5KX) and their spoken expansions
// ("lufthansa five kilo x-ray", "hansa five kilo x-ray").

#ifndef CALLBOOST_CALLSIGN_H_
#define CALLBOOST_CALLSIGN_H_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace callboost {

struct AirlineEntry {
  std::string icao;
  // Spoken airline names, each a space-separated lowercase word sequence.
  std::vector<std::string> telephony;

  friend bool operator==(const AirlineEntry &, const AirlineEntry &) = default;
};

// Airline designators keyed by ICAO code.
//
// File format, one airline per line:
//
//   # comment
//   DLH,lufthansa;hansa
//
// Repeated codes merge their name lists. Names are lowercased and their
// whitespace normalized.
class AirlineTable {
 public:
  void Add(const AirlineEntry &entry);
  const AirlineEntry *Find(std::string_view icao) const;
  size_t Size() const { return entries_.size(); }
  bool Empty() const { return entries_.empty(); }
  std::vector<const AirlineEntry *> Entries() const;

  static AirlineTable Parse(std::istream &is, const std::string &source);
  static AirlineTable Load(const std::string &path);
  // The table shipped with the tool (same content as data/airlines.csv).
  static const AirlineTable &Default();
  void Write(std::ostream &os) const;

 private:
  std::map<std::string, AirlineEntry> entries_;
};

struct ParsedCallsign {
  std::string designator;
  std::string tail;

  friend bool operator==(const ParsedCallsign &, const ParsedCallsign &) = default;
};

struct ExpansionOptions {
  // Also spell 9 as "niner".
  bool niner = false;
};

struct ExpansionVariant {
  std::vector<std::string> words;

  std::string Text() const;
  friend auto operator<=>(const ExpansionVariant &,
                          const ExpansionVariant &) = default;
};

// True when `raw` has the shape of a compressed callsign: 2-3 letters then a
// 1-4 character tail that starts with a digit. Case-insensitive.
bool IsWellFormedCallsign(std::string_view raw);

// Splits at the first digit and resolves the designator. Throws ParseError
// for malformed text and UnknownAirline when the designator is not listed.
ParsedCallsign ParseCallsign(std::string_view raw, const AirlineTable &table);

// All spoken realizations: every telephony name followed by the tail spelled
// character by character. Sorted by text, no duplicates.
std::vector<ExpansionVariant> Expand(std::string_view raw,
                                     const AirlineTable &table,
                                     const ExpansionOptions &opts = {});

// Spellings of one tail character; empty for characters outside [0-9A-Z].
std::vector<std::string> SpellCharacter(char c, const ExpansionOptions &opts = {});

const std::vector<std::string> &DigitWords();
const std::vector<std::string> &NatoWords();

}  // namespace callboost

#endif  // CALLBOOST_CALLSIGN_H_
