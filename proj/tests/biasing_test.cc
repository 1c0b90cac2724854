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

#include <memory>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "callboost/biasing.h"
#include "callboost/error.h"
#include "callboost/fst_ops.h"
#include "callboost/rng.h"
#include "callboost/text_util.h"
#include "oracle.h"

namespace callboost {
namespace {

using testing::CountOccurrences;
using testing::EnumeratePaths;
using testing::MinPathCost;

std::vector<ExpansionVariant> Variants(const std::vector<std::string> &texts) {
  std::vector<ExpansionVariant> out;
  for (const auto &t : texts) out.push_back({SplitWhitespace(t)});
  return out;
}

std::shared_ptr<SymbolTable> Table(const std::vector<std::string> &words) {
  auto t = std::make_shared<SymbolTable>();
  for (const auto &w : words) t->AddSymbol(w);
  return t;
}

// Single-path acceptor with the whole cost on the final state.
Fst Sentence(const SymbolTable &syms, const std::string &text, double cost) {
  std::vector<Label> labels;
  for (const auto &w : SplitWhitespace(text)) labels.push_back(syms.Id(w));
  Fst f = LinearAcceptor(labels);
  for (StateId s = 0; s < f.NumStates(); ++s) {
    if (f.IsFinal(s)) f.SetFinal(s, Weight(cost));
  }
  return f;
}

double BiasedCost(const Fst &sentence, const Fst &bias) {
  return MinPathCost(Compose(sentence, bias));
}

const std::vector<std::string> kWords = {
    "ryanair", "one",  "romeo", "kilo",  "turkish", "six",   "heavy",
    "swiss",   "two",  "eight", "nine",  "hello",   "sovar", "stobart",
    "lima",    "klm",  "three", "climb", "descend", "flight", "level"};

TEST(BiasingTest, TwoVariantsShareTheRootAsTwoBranches) {
  auto syms = Table(kWords);
  const Fst bias = BuildBiasingFst(
      Variants({"ryanair one romeo kilo", "turkish six one heavy"}), Weight(2.0),
      *syms);
  EXPECT_TRUE(bias.IsAcceptor());
  EXPECT_EQ(bias.Start(), 0);
  EXPECT_EQ(bias.Final(0), Weight::One());
  std::set<StateId> branches;
  size_t loops = 0;
  for (const Arc &arc : bias.Arcs(0)) {
    if (arc.nextstate == 0) {
      ++loops;
      EXPECT_EQ(arc.weight, Weight::One());
    } else {
      branches.insert(arc.nextstate);
    }
  }
  EXPECT_EQ(loops, syms->Labels().size());
  EXPECT_EQ(branches.size(), 2u);
  // Two chains of three inner states each.
  EXPECT_EQ(bias.NumStates(), 7);
  EXPECT_NEAR(BiasedCost(Sentence(*syms, "ryanair one romeo kilo", 0.0), bias),
              -2.0, 1e-9);
  EXPECT_NEAR(BiasedCost(Sentence(*syms, "turkish six one heavy", 0.0), bias),
              -2.0, 1e-9);
}

TEST(BiasingTest, EmptyVariantSetIsIdentity) {
  auto syms = Table(kWords);
  const Fst bias = BuildBiasingFst({}, Weight(2.0), *syms);
  EXPECT_EQ(bias.NumStates(), 1);
  EXPECT_EQ(bias.NumArcs(0), syms->Labels().size());
  const Fst s = Sentence(*syms, "hello sovar one nine lima", 3.25);
  auto base = ShortestPath(s);
  auto biased = ShortestPath(Compose(s, bias));
  ASSERT_TRUE(base && biased);
  EXPECT_EQ(base->olabels, biased->olabels);
  EXPECT_NEAR(base->cost.Value(), biased->cost.Value(), 1e-9);
}

TEST(BiasingTest, SingleVariantEarnsTheFullDiscount) {
  auto syms = Table(kWords);
  const Fst bias =
      BuildBiasingFst(Variants({"swiss two six eight nine"}), Weight(2.0), *syms);
  const double c = 7.375;
  const Fst s = Sentence(*syms, "swiss two six eight nine", c);
  EXPECT_NEAR(BiasedCost(s, bias), c - 2.0, 1e-9);
  auto best = ShortestPath(Compose(s, bias));
  ASSERT_TRUE(best);
  EXPECT_NEAR(best->cost.Value(), c - 2.0, 1e-9);
  EXPECT_EQ(best->olabels, ShortestPath(s)->olabels);
}

TEST(BiasingTest, CreditScalesWithOccurrences) {
  auto syms = Table(kWords);
  const double d = 1.75;
  const Fst bias = BuildBiasingFst(
      Variants({"swiss two six eight nine", "ryanair one romeo kilo"}), Weight(d),
      *syms);
  const std::vector<std::pair<std::string, int>> cases = {
      {"climb swiss two six eight nine", 1},
      {"ryanair one romeo kilo flight level swiss two six eight nine", 2},
      {"swiss two six eight nine swiss two six eight nine ryanair one romeo "
       "kilo",
       3},
  };
  for (const auto &[text, m] : cases) {
    const double c = 12.5;
    EXPECT_NEAR(BiasedCost(Sentence(*syms, text, c), bias), c - m * d, 1e-9)
        << text;
  }
}

TEST(BiasingTest, PrefixThenDivergeKeepsCost) {
  auto syms = Table(kWords);
  const Fst bias =
      BuildBiasingFst(Variants({"swiss two six eight nine"}), Weight(2.0), *syms);
  for (const std::string text :
       {"swiss", "swiss two six", "swiss two six eight", "swiss two six eight one",
        "hello swiss two climb", "swiss swiss two six eight"}) {
    EXPECT_NEAR(BiasedCost(Sentence(*syms, text, 4.0), bias), 4.0, 1e-9) << text;
  }
  // Every complete path through the composition nets zero or a full credit.
  for (const auto &p :
       EnumeratePaths(Compose(Sentence(*syms, "swiss two six eight", 0.0), bias))) {
    EXPECT_GE(p.cost, -1e-9);
  }
}

TEST(BiasingTest, PrefixVariantsAreBothCredited) {
  auto syms = Table(kWords);
  const double d = 2.0;
  const Fst bias =
      BuildBiasingFst(Variants({"klm one", "klm one two"}), Weight(d), *syms);
  EXPECT_NEAR(BiasedCost(Sentence(*syms, "klm one", 1.0), bias), 1.0 - d, 1e-9);
  EXPECT_NEAR(BiasedCost(Sentence(*syms, "klm one two", 1.0), bias), 1.0 - d,
              1e-9);
  EXPECT_NEAR(BiasedCost(Sentence(*syms, "klm one three", 1.0), bias), 1.0 - d,
              1e-9);
  EXPECT_NEAR(BiasedCost(Sentence(*syms, "klm three", 1.0), bias), 1.0, 1e-9);
}

TEST(BiasingTest, MatchesOccurrenceCountOracle) {
  const std::vector<std::string> vocab = {"a", "b", "c", "d"};
  auto syms = Table(vocab);
  Rng rng(2024);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<std::vector<std::string>> raw;
    const size_t nv = 1 + rng.UniformInt(3);
    for (size_t v = 0; v < nv; ++v) {
      std::vector<std::string> words;
      const size_t len = 1 + rng.UniformInt(3);
      for (size_t i = 0; i < len; ++i) words.push_back(rng.Pick(vocab));
      raw.push_back(words);
    }
    std::vector<ExpansionVariant> variants;
    for (const auto &w : raw) variants.push_back({w});
    const double d = 0.5 + static_cast<double>(rng.UniformInt(8)) / 4.0;
    const Fst bias = BuildBiasingFst(variants, Weight(d), *syms);

    std::vector<std::string> words;
    const size_t len = rng.UniformInt(9);
    for (size_t i = 0; i < len; ++i) words.push_back(rng.Pick(vocab));
    const Fst s = Sentence(*syms, Join(words), 0.0);
    const double expected = -d * CountOccurrences(words, raw);
    EXPECT_NEAR(BiasedCost(s, bias), expected, 1e-9) << Join(words);
    auto best = ShortestPath(Compose(s, bias));
    ASSERT_TRUE(best);
    EXPECT_NEAR(best->cost.Value(), expected, 1e-9);
  }
}

TEST(BiasingTest, UnknownWordsAreAddedOrRejected) {
  auto syms = Table({"swiss", "two"});
  const auto variants = Variants({"swiss two zulu"});
  const Fst bias = BuildBiasingFst(variants, Weight(1.0), *syms);
  ASSERT_TRUE(bias.InputSymbols());
  EXPECT_TRUE(bias.InputSymbols()->Contains("zulu"));
  EXPECT_FALSE(syms->Contains("zulu"));
  EXPECT_TRUE(bias.InputSymbols()->CompatibleWith(*syms));

  BiasingOptions strict;
  strict.allow_new_words = false;
  try {
    BuildBiasingFst(variants, Weight(1.0), *syms, strict);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError &e) {
    EXPECT_NE(std::string(e.what()).find("zulu"), std::string::npos);
  }
}

TEST(BiasingTest, RejectsNonPositiveDiscount) {
  auto syms = Table(kWords);
  const auto variants = Variants({"swiss two"});
  EXPECT_THROW(BuildBiasingFst(variants, Weight(0.0), *syms), ValidationError);
  EXPECT_THROW(BuildBiasingFst(variants, Weight(-1.0), *syms), ValidationError);
  EXPECT_THROW(BuildBiasingFst(variants, Weight::Zero(), *syms), ValidationError);
}

TEST(BiasingTest, LabelsNeverChange) {
  auto syms = Table(kWords);
  const Fst bias = BuildBiasingFst(
      Variants({"swiss two six eight nine", "klm one", "klm one two"}), Weight(3.0),
      *syms);
  Rng rng(99);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<std::string> words;
    const size_t len = 1 + rng.UniformInt(7);
    for (size_t i = 0; i < len; ++i) words.push_back(rng.Pick(kWords));
    const Fst s = Sentence(*syms, Join(words), 0.0);
    const Fst c = Compose(s, bias);
    EXPECT_TRUE(c.IsAcceptor());
    const auto paths = EnumeratePaths(c);
    ASSERT_FALSE(paths.empty());
    for (const auto &p : paths) {
      EXPECT_EQ(p.ilabels, EnumeratePaths(s)[0].ilabels);
      EXPECT_EQ(p.ilabels, p.olabels);
    }
  }
}

}  // namespace
}  // namespace callboost
