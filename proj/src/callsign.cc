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

#include "callboost/callsign.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "callboost/error.h"
#include "callboost/text_util.h"

namespace callboost {
namespace {

constexpr char kDefaultTable[] =
    "# ICAO designator,telephony[;telephony...]\n"
    "AFR,airfrans\n"
    "AUA,austrian\n"
    "BAW,speedbird\n"
    "BEL,beeline\n"
    "CSA,csa lines\n"
    "DLH,lufthansa;hansa\n"
    "EWG,eurowings\n"
    "EZY,easy\n"
    "IBE,iberia\n"
    "KLM,klm\n"
    "LOT,pollot\n"
    "NAX,nor shuttle\n"
    "QTR,qatari\n"
    "RYR,ryanair\n"
    "SAS,scandinavian\n"
    "STK,stobart\n"
    "SWR,swiss\n"
    "THY,turkish\n"
    "TVS,skytravel\n"
    "UAE,emirates\n"
    "WZZ,wizz air\n";

bool IsDesignatorCode(std::string_view code) {
  if (code.size() < 2 || code.size() > 3) return false;
  return std::all_of(code.begin(), code.end(),
                     [](char c) { return c >= 'A' && c <= 'Z'; });
}

std::string NormalizeName(std::string_view name) {
  return Join(SplitWhitespace(ToLower(name)));
}

}  // namespace

const std::vector<std::string> &DigitWords() {
  static const std::vector<std::string> words = {
      "zero", "one", "two", "three", "four",
      "five", "six", "seven", "eight", "nine"};
  return words;
}

const std::vector<std::string> &NatoWords() {
  static const std::vector<std::string> words = {
      "alfa",   "bravo",   "charlie", "delta",  "echo",  "foxtrot", "golf",
      "hotel",  "india",   "juliett", "kilo",   "lima",  "mike",    "november",
      "oscar",  "papa",    "quebec",  "romeo",  "sierra", "tango",  "uniform",
      "victor", "whiskey", "x-ray",   "yankee", "zulu"};
  return words;
}

void AirlineTable::Add(const AirlineEntry &entry) {
  auto &slot = entries_[entry.icao];
  slot.icao = entry.icao;
  for (const auto &name : entry.telephony) {
    if (std::find(slot.telephony.begin(), slot.telephony.end(), name) ==
        slot.telephony.end()) {
      slot.telephony.push_back(name);
    }
  }
}

const AirlineEntry *AirlineTable::Find(std::string_view icao) const {
  auto it = entries_.find(std::string(icao));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<const AirlineEntry *> AirlineTable::Entries() const {
  std::vector<const AirlineEntry *> out;
  for (const auto &[code, entry] : entries_) out.push_back(&entry);
  return out;
}

AirlineTable AirlineTable::Parse(std::istream &is, const std::string &source) {
  AirlineTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    size_t comma = trimmed.find(',');
    if (comma == std::string::npos) {
      throw ParseError(source, lineno, "expected 'ICAO,name1;name2'");
    }
    AirlineEntry entry;
    entry.icao = Trim(trimmed.substr(0, comma));
    if (!IsDesignatorCode(entry.icao)) {
      throw ParseError(source, lineno,
                       "designator must be 2-3 uppercase letters, got '" +
                           entry.icao + "'");
    }
    for (const auto &name : Split(trimmed.substr(comma + 1), ';')) {
      std::string norm = NormalizeName(name);
      if (norm.empty()) {
        throw ParseError(source, lineno, "empty telephony name");
      }
      if (norm.find(',') != std::string::npos) {
        throw ParseError(source, lineno, "unexpected ',' in telephony name");
      }
      entry.telephony.push_back(norm);
    }
    table.Add(entry);
  }
  return table;
}

AirlineTable AirlineTable::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open airline table " + path);
  return Parse(in, path);
}

const AirlineTable &AirlineTable::Default() {
  static const AirlineTable table = [] {
    std::istringstream in(kDefaultTable);
    return Parse(in, "<builtin>");
  }();
  return table;
}

void AirlineTable::Write(std::ostream &os) const {
  for (const auto &[code, entry] : entries_) {
    os << code << ',';
    for (size_t i = 0; i < entry.telephony.size(); ++i) {
      if (i) os << ';';
      os << entry.telephony[i];
    }
    os << '\n';
  }
}

std::string ExpansionVariant::Text() const { return Join(words); }

bool IsWellFormedCallsign(std::string_view raw) {
  std::string up = ToUpper(raw);
  size_t i = 0;
  while (i < up.size() && up[i] >= 'A' && up[i] <= 'Z') ++i;
  if (i < 2 || i > 3) return false;
  std::string_view tail(up.data() + i, up.size() - i);
  if (tail.empty() || tail.size() > 4) return false;
  if (!std::isdigit(static_cast<unsigned char>(tail[0]))) return false;
  return std::all_of(tail.begin(), tail.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
  });
}

ParsedCallsign ParseCallsign(std::string_view raw, const AirlineTable &table) {
  if (!IsWellFormedCallsign(raw)) {
    throw ParseError("malformed callsign '" + std::string(raw) + "'");
  }
  std::string up = ToUpper(raw);
  size_t i = 0;
  while (up[i] >= 'A' && up[i] <= 'Z') ++i;
  ParsedCallsign parsed{up.substr(0, i), up.substr(i)};
  if (!table.Find(parsed.designator)) throw UnknownAirline(std::string(raw));
  return parsed;
}

std::vector<std::string> SpellCharacter(char c, const ExpansionOptions &opts) {
  c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (c >= '0' && c <= '9') {
    std::vector<std::string> out{DigitWords()[c - '0']};
    if (c == '9' && opts.niner) out.push_back("niner");
    return out;
  }
  if (c >= 'A' && c <= 'Z') return {NatoWords()[c - 'A']};
  return {};
}

std::vector<ExpansionVariant> Expand(std::string_view raw,
                                     const AirlineTable &table,
                                     const ExpansionOptions &opts) {
  const ParsedCallsign parsed = ParseCallsign(raw, table);
  const AirlineEntry *airline = table.Find(parsed.designator);

  // Tail spellings: product over characters.
  std::vector<std::vector<std::string>> tails{{}};
  for (char c : parsed.tail) {
    std::vector<std::vector<std::string>> next;
    for (const auto &prefix : tails) {
      for (const auto &word : SpellCharacter(c, opts)) {
        next.push_back(prefix);
        next.back().push_back(word);
      }
    }
    tails = std::move(next);
  }

  std::vector<ExpansionVariant> out;
  for (const auto &name : airline->telephony) {
    for (const auto &tail : tails) {
      ExpansionVariant v;
      v.words = SplitWhitespace(name);
      v.words.insert(v.words.end(), tail.begin(), tail.end());
      out.push_back(std::move(v));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ExpansionVariant &a, const ExpansionVariant &b) {
              return a.Text() < b.Text();
            });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace callboost
