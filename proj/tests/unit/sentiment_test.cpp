// Copyright 2026 The Chronoscope Authors.
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

#include "chronoscope/sentiment.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "../support/oracle.hpp"
#include "../support/world.hpp"
#include "chronoscope/error.hpp"
#include "chronoscope/text_index.hpp"

namespace chronoscope {
namespace {

Lexicon Parse(const std::string &text) {
  std::istringstream in(text);
  return ParseLexicon(in, "test.csv");
}

Lexicon GoodBad() {
  Lexicon l;
  l.positive = {"good"};
  l.negative = {"bad"};
  return l;
}

Corpus OneDoc(int year, const std::string &body) {
  DocumentRecord d;
  d.doc_id = "d";
  d.year = year;
  d.body = body;
  return MakeCorpus({d});
}

TEST(LexiconTest, ParsesWithAndWithoutHeader) {
  Lexicon a = Parse("word,polarity\nGood,positive\nbad,Negative\n\n");
  EXPECT_EQ(a.positive, std::set<std::string>{"good"});
  EXPECT_EQ(a.negative, std::set<std::string>{"bad"});
  EXPECT_EQ(a.source_name, "test.csv");
  Lexicon b = Parse("good,positive\n");
  EXPECT_EQ(b.positive.size(), 1u);
}

TEST(LexiconTest, DuplicatesCollapse) {
  Lexicon l = Parse("good,positive\ngood,positive\n");
  EXPECT_EQ(l.positive.size(), 1u);
}

TEST(LexiconTest, ConflictNamesTheWord) {
  try {
    Parse("dual,positive\ndual,negative\n");
    FAIL() << "expected an error";
  } catch (const DataError &e) {
    EXPECT_NE(std::string(e.what()).find("'dual'"), std::string::npos) << e.what();
  }
}

TEST(LexiconTest, RejectsMalformedEntries) {
  EXPECT_THROW(Parse("good,neutral\n"), DataError);
  EXPECT_THROW(Parse("very good,positive\n"), DataError);
  EXPECT_THROW(Parse("good\n"), DataError);
  EXPECT_THROW(Parse("word,polarity\n"), DataError);
  EXPECT_THROW(LoadLexicon("/nonexistent/lexicon.csv"), DataError);
}

TEST(SentimentTest, HandFixturePercentages) {
  CorpusIndex index = BuildIndex(OneDoc(2000, "good good bad x"));
  SentimentStats stats = SentimentByYear(index, GoodBad());
  const SentimentYearStats &s = stats.at(2000);
  EXPECT_EQ(s.pos_tokens, 2u);
  EXPECT_EQ(s.neg_tokens, 1u);
  EXPECT_EQ(s.total_tokens, 4u);
  EXPECT_EQ(s.doc_count, 1u);
  auto [pos, neg] = SentimentPercentages(stats, {2000, 2000});
  EXPECT_NEAR(*pos.at(2000), 50.0, 1e-9);
  EXPECT_NEAR(*neg.at(2000), 25.0, 1e-9);
  EXPECT_EQ(pos.label(), "positive %");
  EXPECT_EQ(neg.label(), "negative %");
  EXPECT_EQ(pos.mode(), SeriesMode::kPercentage);
}

TEST(SentimentTest, EmptyYearIsNull) {
  CorpusIndex index = BuildIndex(OneDoc(2000, "good"));
  SentimentStats stats = SentimentByYear(index, GoodBad());
  auto [pos, neg] = SentimentPercentages(stats, {1999, 2001});
  EXPECT_FALSE(pos.at(1999).has_value());
  EXPECT_EQ(*pos.at(2000), 100.0);
  EXPECT_EQ(*neg.at(2000), 0.0);
  EXPECT_FALSE(neg.at(2001).has_value());
}

TEST(SentimentTest, PerArticle) {
  SentimentStats stats;
  stats[1990] = {1990, 10, 3, 100, 5};
  auto [pos, neg] = SentimentPerArticle(stats, {1990, 1991});
  EXPECT_DOUBLE_EQ(*pos.at(1990), 2.0);
  EXPECT_DOUBLE_EQ(*neg.at(1990), 0.6);
  EXPECT_FALSE(pos.at(1991).has_value());
  EXPECT_EQ(pos.mode(), SeriesMode::kAverage);
}

TEST(SentimentTest, AddingNeutralTextDilutes) {
  const std::string base = "good bad good market";
  double previous = 101;
  for (int extra = 0; extra < 5; ++extra) {
    std::string body = base;
    for (int i = 0; i < extra; ++i) body += " neutral";
    CorpusIndex index = BuildIndex(OneDoc(2000, body));
    auto [pos, neg] = SentimentPercentages(SentimentByYear(index, GoodBad()), {2000, 2000});
    EXPECT_LT(*pos.at(2000), previous);
    previous = *pos.at(2000);
  }
}

class SentimentOracleTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(SentimentOracleTest, MatchesRecountAndStaysBounded) {
  testing::World w = testing::MakeWorld(GetParam());
  CorpusIndex index = BuildIndex(w.corpus);
  SentimentStats stats = SentimentByYear(index, w.lexicon);
  auto expected = oracle::SentimentByYear(w.corpus, w.lexicon);
  ASSERT_EQ(stats.size(), expected.size());
  for (const auto &[year, e] : expected) {
    const SentimentYearStats &s = stats.at(year);
    EXPECT_EQ(s.pos_tokens, e.pos);
    EXPECT_EQ(s.neg_tokens, e.neg);
    EXPECT_EQ(s.total_tokens, e.total);
    EXPECT_EQ(s.doc_count, e.docs);
  }
  const YearRange range{w.corpus.years().front(), w.corpus.years().back()};
  auto [pos, neg] = SentimentPercentages(stats, range);
  for (int year = range.from; year <= range.to; ++year) {
    if (!pos.at(year)) continue;
    EXPECT_GE(*pos.at(year), 0.0);
    EXPECT_GE(*neg.at(year), 0.0);
    EXPECT_LE(*pos.at(year) + *neg.at(year), 100.0);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SentimentOracleTest, ::testing::Values(21, 22, 23));

}  // namespace
}  // namespace chronoscope
