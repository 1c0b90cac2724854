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
// Surveillance context: which callsigns were in the airspace when each
// utterance was spoken.
//
// JSON lines, one object per utterance:
//
//   {"utt": "u001", "ts": 1650000000, "callsigns": ["DLH5KX", "SWR2689"],
//    "truth": "DLH5KX", "ref": "lufthansa five kilo x-ray descend"}
//
// "utt", "ts" and "callsigns" are required. "truth" (ground-truth callsign)
// and "ref" (reference transcript) are optional. A truth that is not in the
// callsign list must be marked with "out_of_list": true.

#ifndef CALLBOOST_SURVEILLANCE_H_
#define CALLBOOST_SURVEILLANCE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "callboost/callsign.h"

namespace callboost {

struct UtteranceContext {
  std::string utterance_id;
  int64_t timestamp = 0;
  std::vector<std::string> callsigns;
  std::optional<std::string> ground_truth;
  std::optional<std::vector<std::string>> reference;
  bool out_of_list = false;

  friend bool operator==(const UtteranceContext &,
                         const UtteranceContext &) = default;
};

// Throws ParseError (with line number) on schema violations and on
// duplicate utterance ids. Record order is preserved.
std::vector<UtteranceContext> ParseSurveillance(std::istream &is,
                                                const std::string &source);
std::vector<UtteranceContext> LoadSurveillance(const std::string &path);
void WriteSurveillance(const std::vector<UtteranceContext> &contexts,
                       std::ostream &os);
void SaveSurveillance(const std::vector<UtteranceContext> &contexts,
                      const std::string &path);

const UtteranceContext *FindContext(
    const std::vector<UtteranceContext> &contexts, const std::string &utt);

struct ContextStats {
  size_t utterances = 0;
  size_t with_callsign = 0;
  size_t without_callsign = 0;
  // Lower median of the callsign list sizes; 0 for no input.
  size_t median_callsigns = 0;

  friend bool operator==(const ContextStats &, const ContextStats &) = default;
};

// "With a callsign" means the record has a ground-truth callsign.
ContextStats ComputeContextStats(const std::vector<UtteranceContext> &contexts);

// Expansions of the utterance's callsign list, or of its ground truth alone
// when `truth_only` is set. Sorted, no duplicates. Callsigns with an unknown
// airline throw UnknownAirline unless `skipped` is given, in which case they
// are collected there.
std::vector<ExpansionVariant> ContextVariants(
    const UtteranceContext &ctx, const AirlineTable &table, bool truth_only,
    const ExpansionOptions &opts = {},
    std::vector<std::string> *skipped = nullptr);

}  // namespace callboost

#endif  // CALLBOOST_SURVEILLANCE_H_
