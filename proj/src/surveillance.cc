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

#include "callboost/surveillance.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "callboost/error.h"
#include "callboost/text_util.h"
#include "json.hpp"

namespace callboost {
namespace {

using Json = nlohmann::ordered_json;

std::string ReadCallsignField(const Json &value, const std::string &field,
                              const std::string &source, int lineno) {
  if (!value.is_string()) {
    throw ParseError(source, lineno, "'" + field + "' must hold strings");
  }
  std::string raw = ToUpper(Trim(value.get<std::string>()));
  if (!IsWellFormedCallsign(raw)) {
    throw ParseError(source, lineno, "malformed callsign '" + raw + "'");
  }
  return raw;
}

UtteranceContext FromJson(const Json &obj, const std::string &source,
                          int lineno) {
  if (!obj.is_object()) {
    throw ParseError(source, lineno, "expected a JSON object");
  }
  static const std::set<std::string> kKnown = {"utt",   "ts",  "callsigns",
                                               "truth", "ref", "out_of_list"};
  for (const auto &[key, value] : obj.items()) {
    if (!kKnown.count(key)) {
      throw ParseError(source, lineno, "unknown field '" + key + "'");
    }
  }
  for (const char *key : {"utt", "ts", "callsigns"}) {
    if (!obj.contains(key)) {
      throw ParseError(source, lineno,
                       std::string("missing required field '") + key + "'");
    }
  }

  UtteranceContext ctx;
  const Json &utt = obj.at("utt");
  if (!utt.is_string() || Trim(utt.get<std::string>()).empty()) {
    throw ParseError(source, lineno, "'utt' must be a non-empty string");
  }
  ctx.utterance_id = utt.get<std::string>();
  if (ctx.utterance_id != Trim(ctx.utterance_id) ||
      ctx.utterance_id.find_first_of(" \t") != std::string::npos) {
    throw ParseError(source, lineno, "'utt' must not contain whitespace");
  }

  const Json &ts = obj.at("ts");
  if (!ts.is_number_integer()) {
    throw ParseError(source, lineno, "'ts' must be an integer");
  }
  ctx.timestamp = ts.get<int64_t>();

  const Json &list = obj.at("callsigns");
  if (!list.is_array()) {
    throw ParseError(source, lineno, "'callsigns' must be an array");
  }
  for (const auto &item : list) {
    ctx.callsigns.push_back(ReadCallsignField(item, "callsigns", source, lineno));
  }

  if (obj.contains("truth") && !obj.at("truth").is_null()) {
    ctx.ground_truth = ReadCallsignField(obj.at("truth"), "truth", source, lineno);
  }
  if (obj.contains("ref") && !obj.at("ref").is_null()) {
    if (!obj.at("ref").is_string()) {
      throw ParseError(source, lineno, "'ref' must be a string");
    }
    ctx.reference = SplitWhitespace(ToLower(obj.at("ref").get<std::string>()));
  }
  if (obj.contains("out_of_list")) {
    if (!obj.at("out_of_list").is_boolean()) {
      throw ParseError(source, lineno, "'out_of_list' must be a boolean");
    }
    ctx.out_of_list = obj.at("out_of_list").get<bool>();
  }

  const bool listed =
      ctx.ground_truth &&
      std::find(ctx.callsigns.begin(), ctx.callsigns.end(),
                *ctx.ground_truth) != ctx.callsigns.end();
  if (ctx.ground_truth && !listed && !ctx.out_of_list) {
    throw ParseError(source, lineno,
                     "truth " + *ctx.ground_truth +
                         " is not in 'callsigns'; mark it \"out_of_list\": true");
  }
  if (ctx.out_of_list && (!ctx.ground_truth || listed)) {
    throw ParseError(source, lineno,
                     "'out_of_list' is set but the truth is absent or listed");
  }
  return ctx;
}

Json ToJson(const UtteranceContext &ctx) {
  Json obj;
  obj["utt"] = ctx.utterance_id;
  obj["ts"] = ctx.timestamp;
  obj["callsigns"] = ctx.callsigns;
  if (ctx.ground_truth) obj["truth"] = *ctx.ground_truth;
  if (ctx.reference) obj["ref"] = Join(*ctx.reference);
  if (ctx.out_of_list) obj["out_of_list"] = true;
  return obj;
}

}  // namespace

std::vector<UtteranceContext> ParseSurveillance(std::istream &is,
                                                const std::string &source) {
  std::vector<UtteranceContext> out;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::parse_error &e) {
      throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
    }
    UtteranceContext ctx = FromJson(obj, source, lineno);
    if (!seen.insert(ctx.utterance_id).second) {
      throw ParseError(source, lineno,
                       "duplicate utterance id " + ctx.utterance_id);
    }
    out.push_back(std::move(ctx));
  }
  return out;
}

std::vector<UtteranceContext> LoadSurveillance(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open surveillance file " + path);
  return ParseSurveillance(in, path);
}

void WriteSurveillance(const std::vector<UtteranceContext> &contexts,
                       std::ostream &os) {
  for (const auto &ctx : contexts) os << ToJson(ctx).dump() << '\n';
}

void SaveSurveillance(const std::vector<UtteranceContext> &contexts,
                      const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  WriteSurveillance(contexts, out);
  if (!out) throw IoError("write failed: " + path);
}

const UtteranceContext *FindContext(
    const std::vector<UtteranceContext> &contexts, const std::string &utt) {
  for (const auto &ctx : contexts) {
    if (ctx.utterance_id == utt) return &ctx;
  }
  return nullptr;
}

ContextStats ComputeContextStats(
    const std::vector<UtteranceContext> &contexts) {
  ContextStats stats;
  if (contexts.empty()) return stats;
  std::vector<size_t> sizes;
  for (const auto &ctx : contexts) {
    ++stats.utterances;
    if (ctx.ground_truth) {
      ++stats.with_callsign;
    } else {
      ++stats.without_callsign;
    }
    sizes.push_back(ctx.callsigns.size());
  }
  std::sort(sizes.begin(), sizes.end());
  stats.median_callsigns = sizes[(sizes.size() - 1) / 2];
  return stats;
}

std::vector<ExpansionVariant> ContextVariants(const UtteranceContext &ctx,
                                              const AirlineTable &table,
                                              bool truth_only,
                                              const ExpansionOptions &opts,
                                              std::vector<std::string> *skipped) {
  std::vector<std::string> raws;
  if (truth_only) {
    if (ctx.ground_truth) raws.push_back(*ctx.ground_truth);
  } else {
    raws = ctx.callsigns;
  }
  std::vector<ExpansionVariant> out;
  for (const auto &raw : raws) {
    try {
      for (auto &v : Expand(raw, table, opts)) out.push_back(std::move(v));
    } catch (const UnknownAirline &) {
      if (!skipped) throw;
      skipped->push_back(raw);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace callboost
