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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "callboost/error.h"
#include "callboost/rng.h"
#include "callboost/surveillance.h"

namespace callboost {
namespace {

std::vector<UtteranceContext> Parse(const std::string &text) {
  std::istringstream is(text);
  return ParseSurveillance(is, "surv.jsonl");
}

int FailingLine(const std::string &text) {
  try {
    Parse(text);
  } catch (const ParseError &e) {
    return e.line();
  }
  return -1;
}

TEST(SurveillanceTest, LoadsLargeList) {
  std::string list;
  for (int i = 0; i < 29; ++i) {
    if (i) list += ",";
    list += "\"SWR" + std::to_string(100 + i) + "\"";
  }
  const auto ctx = Parse("{\"utt\":\"u1\",\"ts\":1650000000,\"callsigns\":[" +
                         list + "],\"truth\":\"SWR105\"}\n");
  ASSERT_EQ(ctx.size(), 1u);
  EXPECT_EQ(ctx[0].callsigns.size(), 29u);
  EXPECT_EQ(ctx[0].timestamp, 1650000000);
  EXPECT_EQ(ctx[0].ground_truth, "SWR105");
  EXPECT_FALSE(ctx[0].out_of_list);
}

TEST(SurveillanceTest, OutOfListMustBeExplicit) {
  EXPECT_EQ(FailingLine("{\"utt\":\"u1\",\"ts\":1,\"callsigns\":[\"SWR1\"],"
                        "\"truth\":\"DLH5KX\"}\n"),
            1);
  const auto ok = Parse(
      "{\"utt\":\"u1\",\"ts\":1,\"callsigns\":[\"SWR1\"],\"truth\":\"DLH5KX\","
      "\"out_of_list\":true}\n");
  EXPECT_TRUE(ok[0].out_of_list);
  EXPECT_EQ(FailingLine("{\"utt\":\"u1\",\"ts\":1,\"callsigns\":[\"SWR1\"],"
                        "\"truth\":\"SWR1\",\"out_of_list\":true}\n"),
            1);
  EXPECT_EQ(FailingLine("{\"utt\":\"u1\",\"ts\":1,\"callsigns\":[],"
                        "\"out_of_list\":true}\n"),
            1);
}

TEST(SurveillanceTest, SchemaErrorsCarryLineNumbers) {
  const std::string good = "{\"utt\":\"u1\",\"ts\":1,\"callsigns\":[\"SWR1\"]}\n";
  EXPECT_EQ(FailingLine(good + "{\"utt\":\"u2\",\"ts\":1}\n"), 2);
  EXPECT_EQ(FailingLine(good + "\n{\"utt\":\"u1\",\"ts\":2,\"callsigns\":[]}\n"), 3);
  EXPECT_EQ(FailingLine(good + "{\"utt\":\"u2\",\"ts\":1,\"callsigns\":[],\"x\":1}\n"),
            2);
  EXPECT_EQ(FailingLine(good + "{\"utt\":\"u2\",\"ts\":1.5,\"callsigns\":[]}\n"), 2);
  EXPECT_EQ(FailingLine(good + "{\"utt\":\"u2\",\"ts\":1,\"callsigns\":[\"12\"]}\n"),
            2);
  EXPECT_EQ(FailingLine(good + "not json\n"), 2);
  EXPECT_EQ(FailingLine("[1,2]\n"), 1);
}

TEST(SurveillanceTest, NormalizesCase) {
  const auto ctx = Parse(
      "{\"utt\":\"u1\",\"ts\":1,\"callsigns\":[\"swr2689\"],\"truth\":\"SwR2689\","
      "\"ref\":\"Swiss  Two six\"}\n");
  EXPECT_EQ(ctx[0].callsigns[0], "SWR2689");
  EXPECT_EQ(ctx[0].ground_truth, "SWR2689");
  EXPECT_EQ(*ctx[0].reference, (std::vector<std::string>{"swiss", "two", "six"}));
}

TEST(SurveillanceTest, RoundTrip) {
  Rng rng(3);
  const std::vector<std::string> pool = {"SWR2689", "DLH5KX", "RYR1RK", "RYR1SG",
                                         "TVS84J", "KLM12", "BAW9"};
  std::vector<UtteranceContext> contexts;
  for (int i = 0; i < 100; ++i) {
    UtteranceContext ctx;
    ctx.utterance_id = "utt" + std::to_string(i);
    ctx.timestamp = static_cast<int64_t>(rng.UniformInt(2000000000));
    for (const auto &c : pool) {
      if (rng.Bernoulli(0.5)) ctx.callsigns.push_back(c);
    }
    if (rng.Bernoulli(0.3) && !ctx.callsigns.empty()) {
      ctx.ground_truth = rng.Pick(ctx.callsigns);
    } else if (rng.Bernoulli(0.3)) {
      ctx.ground_truth = "EZY42";
      ctx.out_of_list = true;
    }
    if (rng.Bernoulli(0.5)) ctx.reference = std::vector<std::string>{"climb", "one"};
    contexts.push_back(ctx);
  }
  std::ostringstream os;
  WriteSurveillance(contexts, os);
  std::istringstream is(os.str());
  const auto back = ParseSurveillance(is, "mem");
  EXPECT_EQ(back, contexts);
  std::ostringstream again;
  WriteSurveillance(back, again);
  EXPECT_EQ(again.str(), os.str());
  EXPECT_EQ(FindContext(back, "utt7"), &back[7]);
  EXPECT_EQ(FindContext(back, "nope"), nullptr);
}

UtteranceContext WithSize(size_t n, bool truth) {
  UtteranceContext ctx;
  for (size_t i = 0; i < n; ++i) ctx.callsigns.push_back("SWR" + std::to_string(i + 1));
  if (truth && n) ctx.ground_truth = ctx.callsigns[0];
  return ctx;
}

TEST(ContextStatsTest, LowerMedian) {
  EXPECT_EQ(ComputeContextStats({}), ContextStats{});
  EXPECT_EQ(ComputeContextStats({WithSize(5, true), WithSize(5, true), WithSize(5, true)})
                .median_callsigns,
            5u);
  EXPECT_EQ(ComputeContextStats({WithSize(4, true), WithSize(2, true)}).median_callsigns,
            2u);
}

TEST(ContextStatsTest, ManifestRow) {
  std::vector<UtteranceContext> contexts;
  for (size_t i = 0; i < 472; ++i) contexts.push_back(WithSize(20 + i % 19, true));
  const ContextStats s = ComputeContextStats(contexts);
  EXPECT_EQ(s.with_callsign, 472u);
  EXPECT_EQ(s.without_callsign, 0u);
  EXPECT_EQ(s.median_callsigns, 29u);
}

TEST(ContextVariantsTest, ListOrTruthOnly) {
  UtteranceContext ctx;
  ctx.callsigns = {"DLH5KX", "SWR2689"};
  ctx.ground_truth = "SWR2689";
  const auto all = ContextVariants(ctx, AirlineTable::Default(), false);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].Text(), "hansa five kilo x-ray");
  EXPECT_EQ(all[1].Text(), "lufthansa five kilo x-ray");
  EXPECT_EQ(all[2].Text(), "swiss two six eight nine");
  const auto truth = ContextVariants(ctx, AirlineTable::Default(), true);
  ASSERT_EQ(truth.size(), 1u);
  EXPECT_EQ(truth[0].Text(), "swiss two six eight nine");

  ctx.callsigns.push_back("QQQ1");
  EXPECT_THROW(ContextVariants(ctx, AirlineTable::Default(), false), UnknownAirline);
  std::vector<std::string> skipped;
  EXPECT_EQ(ContextVariants(ctx, AirlineTable::Default(), false, {}, &skipped).size(),
            3u);
  EXPECT_EQ(skipped, std::vector<std::string>{"QQQ1"});
}

}  // namespace
}  // namespace callboost
