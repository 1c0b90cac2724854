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

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "callboost/callsign.h"
#include "callboost/error.h"
#include "callboost/text_util.h"

namespace callboost {
namespace {

std::vector<std::string> Texts(const std::vector<ExpansionVariant> &vars) {
  std::vector<std::string> out;
  for (const auto &v : vars) out.push_back(v.Text());
  return out;
}

TEST(ParseCallsignTest, SplitsDesignatorAndTail) {
  const AirlineTable &t = AirlineTable::Default();
  EXPECT_EQ(ParseCallsign("SWR2689", t), (ParsedCallsign{"SWR", "2689"}));
  EXPECT_EQ(ParseCallsign("RYR1RK", t), (ParsedCallsign{"RYR", "1RK"}));
  EXPECT_EQ(ParseCallsign("DLH5KX", t), (ParsedCallsign{"DLH", "5KX"}));
  EXPECT_EQ(ParseCallsign("dlh5kx", t), (ParsedCallsign{"DLH", "5KX"}));
}

TEST(ParseCallsignTest, Errors) {
  const AirlineTable &t = AirlineTable::Default();
  EXPECT_THROW(ParseCallsign("ZZZ123", t), UnknownAirline);
  try {
    ParseCallsign("ZZZ123", t);
  } catch (const UnknownAirline &e) {
    EXPECT_EQ(e.raw(), "ZZZ123");
  }
  for (const char *bad : {"", "SWR", "2689", "SWRA123", "SWR12345", "SWRX12",
                          "S1", "SWR-12", "SWR 12"}) {
    EXPECT_FALSE(IsWellFormedCallsign(bad)) << bad;
    EXPECT_THROW(ParseCallsign(bad, t), ParseError) << bad;
  }
  EXPECT_TRUE(IsWellFormedCallsign("KL1"));
  EXPECT_TRUE(IsWellFormedCallsign("TVS84J"));
}

TEST(ExpandTest, KnownCallsigns) {
  const AirlineTable &t = AirlineTable::Default();
  EXPECT_EQ(Texts(Expand("SWR2689", t)),
            std::vector<std::string>{"swiss two six eight nine"});
  EXPECT_EQ(Texts(Expand("RYR1RK", t)),
            std::vector<std::string>{"ryanair one romeo kilo"});
  EXPECT_EQ(Texts(Expand("RYR1SG", t)),
            std::vector<std::string>{"ryanair one sierra golf"});
  EXPECT_EQ(Texts(Expand("DLH5KX", t)),
            (std::vector<std::string>{"hansa five kilo x-ray",
                                      "lufthansa five kilo x-ray"}));
  EXPECT_EQ(Texts(Expand("TVS84J", t)),
            std::vector<std::string>{"skytravel eight four juliett"});
}

TEST(ExpandTest, NinerDoublesEveryNine) {
  const AirlineTable &t = AirlineTable::Default();
  ExpansionOptions opts;
  opts.niner = true;
  EXPECT_EQ(Texts(Expand("SWR2689", t, opts)),
            (std::vector<std::string>{"swiss two six eight nine",
                                      "swiss two six eight niner"}));
  EXPECT_EQ(Expand("SWR99", t, opts).size(), 4u);
  EXPECT_EQ(Expand("DLH99", t, opts).size(), 8u);
}

TEST(ExpandTest, StructureInvariants) {
  const AirlineTable &t = AirlineTable::Default();
  const std::set<std::string> digits(DigitWords().begin(), DigitWords().end());
  const std::set<std::string> nato(NatoWords().begin(), NatoWords().end());
  for (const auto *entry : t.Entries()) {
    for (const char *tail : {"1", "42", "7AB", "3Z9Q"}) {
      const std::string raw = entry->icao + tail;
      const auto vars = Expand(raw, t);
      EXPECT_EQ(vars.size(), entry->telephony.size()) << raw;
      EXPECT_EQ(Expand(raw, t), vars);
      for (const auto &v : vars) {
        bool matched = false;
        for (const auto &name : entry->telephony) {
          const auto name_words = SplitWhitespace(name);
          if (v.words.size() != name_words.size() + std::string(tail).size()) continue;
          if (!std::equal(name_words.begin(), name_words.end(), v.words.begin())) continue;
          matched = true;
          for (size_t i = 0; tail[i]; ++i) {
            const std::string &w = v.words[name_words.size() + i];
            if (tail[i] >= '0' && tail[i] <= '9') {
              EXPECT_TRUE(digits.count(w)) << w;
            } else {
              EXPECT_TRUE(nato.count(w)) << w;
              EXPECT_EQ(std::toupper(static_cast<unsigned char>(w[0])), tail[i]);
            }
          }
        }
        EXPECT_TRUE(matched) << v.Text();
      }
    }
  }
}

TEST(SpellTest, IcaoOrthography) {
  EXPECT_EQ(SpellCharacter('A'), std::vector<std::string>{"alfa"});
  EXPECT_EQ(SpellCharacter('J'), std::vector<std::string>{"juliett"});
  EXPECT_EQ(SpellCharacter('X'), std::vector<std::string>{"x-ray"});
  EXPECT_EQ(SpellCharacter('0'), std::vector<std::string>{"zero"});
  EXPECT_TRUE(SpellCharacter('#').empty());
  EXPECT_EQ(NatoWords().size(), 26u);
  EXPECT_EQ(DigitWords().size(), 10u);
}

TEST(AirlineTableTest, ParsesAndMerges) {
  std::istringstream in(
      "# telephony designators\n"
      "DLH,lufthansa;hansa\r\n"
      "\n"
      "SWR,swiss\n"
      "SWR,Swissair\n"
      "SWR,swiss\n"
      "CSA,  CSA   Lines \n");
  const AirlineTable t = AirlineTable::Parse(in, "airlines.csv");
  ASSERT_NE(t.Find("DLH"), nullptr);
  EXPECT_EQ(t.Find("DLH")->telephony, (std::vector<std::string>{"lufthansa", "hansa"}));
  EXPECT_EQ(t.Find("SWR")->telephony, (std::vector<std::string>{"swiss", "swissair"}));
  EXPECT_EQ(t.Find("CSA")->telephony, std::vector<std::string>{"csa lines"});
  EXPECT_EQ(t.Size(), 3u);
}

TEST(AirlineTableTest, EmptyTableRejectsEverything) {
  std::istringstream in("");
  const AirlineTable t = AirlineTable::Parse(in, "empty.csv");
  EXPECT_TRUE(t.Empty());
  EXPECT_THROW(Expand("SWR2689", t), UnknownAirline);
}

TEST(AirlineTableTest, MalformedRowsCarryLineNumbers) {
  for (const char *text : {"SWR,swiss\nswr\n", "SWR,swiss\nSW1R,x\n",
                           "SWR,swiss\nSWR,\n", "SWR,swiss\nSWR,a;;b\n"}) {
    std::istringstream in(text);
    try {
      AirlineTable::Parse(in, "t.csv");
      FAIL() << text;
    } catch (const ParseError &e) {
      EXPECT_EQ(e.line(), 2) << text;
    }
  }
}

TEST(AirlineTableTest, WriteParseRoundTrip) {
  std::stringstream ss;
  AirlineTable::Default().Write(ss);
  const AirlineTable back = AirlineTable::Parse(ss, "x");
  ASSERT_EQ(back.Size(), AirlineTable::Default().Size());
  for (const auto *e : AirlineTable::Default().Entries()) {
    ASSERT_NE(back.Find(e->icao), nullptr);
    EXPECT_EQ(*back.Find(e->icao), *e);
  }
}

TEST(AirlineTableTest, ShippedFileMatchesBuiltIn) {
  const AirlineTable file = AirlineTable::Load(CALLBOOST_DATA_DIR "/airlines.csv");
  const auto a = file.Entries();
  const auto b = AirlineTable::Default().Entries();
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(*a[i], *b[i]);
}

}  // namespace
}  // namespace callboost
