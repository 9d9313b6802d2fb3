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

#include "chronoscope/text_index.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "../support/oracle.hpp"
#include "../support/world.hpp"
#include "chronoscope/error.hpp"

namespace chronoscope {
namespace {

DocumentRecord Doc(const std::string &id, int year, const std::string &body) {
  DocumentRecord d;
  d.doc_id = id;
  d.year = year;
  d.body = body;
  return d;
}

Corpus ThreeDocFixture() {
  return MakeCorpus({Doc("a", 1992, "usa japan trade"), Doc("b", 1992, "usa growth"),
                     Doc("c", 1993, "japan usa")});
}

TEST(TextIndexTest, EmptyCorpus) {
  CorpusIndex index = BuildIndex(Corpus{});
  EXPECT_TRUE(index.empty());
  EXPECT_EQ(index.doc_count(), 0u);
  EXPECT_EQ(DocFrequency(index, "usa", 1992), 0u);
  EXPECT_EQ(index.Find(1992), nullptr);
}

TEST(TextIndexTest, SingleDocumentPostings) {
  CorpusIndex index = BuildIndex(MakeCorpus({Doc("d", 2000, "a b a")}));
  const YearIndex *y = index.Find(2000);
  ASSERT_NE(y, nullptr);
  EXPECT_EQ(y->postings().size(), 2u);
  EXPECT_EQ(y->token_total(), 3u);
  EXPECT_EQ(y->doc_token_counts(), std::vector<std::uint32_t>{3});
  EXPECT_EQ(DocFrequency(index, "a", 2000), 1u);
  EXPECT_EQ(TokenFrequency(index, "a", 2000), 2u);
  EXPECT_EQ(TokenFrequency(index, "b", 2000), 1u);
  EXPECT_EQ(DocFrequency(index, "c", 2000), 0u);
  EXPECT_EQ(DocFrequency(index, "a", 2001), 0u);
  ASSERT_EQ(y->Lookup("a").size(), 1u);
  EXPECT_EQ(y->Lookup("a")[0], (Posting{0, 2}));
  EXPECT_TRUE(y->Lookup("zzz").empty());
}

TEST(NormalizeTermTest, FoldsAndRejects) {
  EXPECT_EQ(NormalizeTerm("  Japan "), "japan");
  EXPECT_EQ(NormalizeTerm("E-Mail"), "e-mail");
  EXPECT_EQ(NormalizeTerm("\"USA\""), "usa");
  EXPECT_THROW(NormalizeTerm("information technology"), UsageError);
  EXPECT_THROW(NormalizeTerm(""), UsageError);
  EXPECT_THROW(NormalizeTerm("--"), UsageError);
}

TEST(CooccurrenceTest, ThreeDocFixture) {
  CorpusIndex index = BuildIndex(ThreeDocFixture());
  EXPECT_EQ(Cooccurrence(index, "usa", "japan", 1992), 1u);
  EXPECT_EQ(Cooccurrence(index, "usa", "japan", 1993), 1u);
  EXPECT_EQ(Cooccurrence(index, "usa", "growth", 1993), 0u);
  EXPECT_EQ(Cooccurrence(index, "usa", "usa", 1992), 2u);
  EXPECT_EQ(Cooccurrence(index, "usa", "absent", 1992), 0u);
}

TEST(CooccurrenceTest, IntersectCount) {
  std::vector<Posting> a = {{0, 1}, {2, 5}, {4, 1}, {9, 2}};
  std::vector<Posting> b = {{1, 1}, {2, 1}, {9, 7}};
  EXPECT_EQ(IntersectCount(a, b), 2u);
  EXPECT_EQ(IntersectCount(b, a), 2u);
  EXPECT_EQ(IntersectCount(a, {}), 0u);
}

class OracleIndexTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(OracleIndexTest, MatchesNaiveScan) {
  testing::World w = testing::MakeWorld(GetParam(), 200, 8);
  CorpusIndex index = BuildIndex(w.corpus);
  std::set<std::string> terms;
  for (const std::string &v : w.vocabulary) {
    for (const std::string &t : oracle::Tokens(v)) terms.insert(t);
  }
  std::vector<std::string> sample(terms.begin(), terms.end());
  sample.resize(std::min<std::size_t>(sample.size(), 20));
  sample.push_back("never-seen");
  for (int year : w.corpus.years()) {
    EXPECT_EQ(index.Find(year)->token_total(), oracle::TokenTotal(w.corpus, year));
    for (const std::string &a : sample) {
      ASSERT_EQ(DocFrequency(index, a, year), oracle::DocFrequency(w.corpus, a, year)) << a;
      ASSERT_EQ(TokenFrequency(index, a, year), oracle::TokenFrequency(w.corpus, a, year)) << a;
      for (const std::string &b : sample) {
        const std::size_t ab = Cooccurrence(index, a, b, year);
        ASSERT_EQ(ab, oracle::Cooccurrence(w.corpus, a, b, year)) << a << " & " << b;
        ASSERT_EQ(ab, Cooccurrence(index, b, a, year));
        ASSERT_LE(ab, std::min(DocFrequency(index, a, year), DocFrequency(index, b, year)));
      }
      ASSERT_EQ(Cooccurrence(index, a, a, year), DocFrequency(index, a, year));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleIndexTest, ::testing::Values(1, 2, 3, 4));

TEST(TextIndexTest, PostingsAreSortedAndConsistent) {
  testing::World w = testing::MakeWorld(99, 300, 5);
  CorpusIndex index = BuildIndex(w.corpus);
  for (const auto &[year, y] : index.years()) {
    std::uint64_t occurrences = 0;
    for (const auto &[term, postings] : y.postings()) {
      ASSERT_FALSE(postings.empty());
      for (std::size_t i = 0; i < postings.size(); ++i) {
        ASSERT_GT(postings[i].count, 0u);
        ASSERT_LT(postings[i].doc, y.doc_count());
        if (i) {
          ASSERT_LT(postings[i - 1].doc, postings[i].doc);
        }
        occurrences += postings[i].count;
      }
    }
    EXPECT_EQ(occurrences, y.token_total());
  }
}

TEST(TextIndexTest, WorkerCountDoesNotChangeResult) {
  testing::World w = testing::MakeWorld(5, 500, 30);
  CorpusIndex one = BuildIndex(w.corpus, 1);
  CorpusIndex eight = BuildIndex(w.corpus, 8);
  EXPECT_EQ(one, eight);
  for (const auto &[year, y] : one.years()) {
    std::ostringstream a, b;
    WriteYearIndex(y, a);
    WriteYearIndex(*eight.Find(year), b);
    EXPECT_EQ(a.str(), b.str());
  }
}

TEST(SerializationTest, IndependentParseOfWrittenFormat) {
  CorpusIndex index = BuildIndex(MakeCorpus({Doc("x1", 1992, "b a b"), Doc("x2", 1992, "b c")}));
  std::ostringstream out;
  WriteYearIndex(*index.Find(1992), out);
  EXPECT_EQ(out.str(),
            "chronoscope-index 1\n"
            "year 1992\n"
            "documents 2\n"
            "tokens 5\n"
            "doc x1 3\n"
            "doc x2 2\n"
            "terms 3\n"
            "a 1 0:1\n"
            "b 2 0:2 1:1\n"
            "c 1 1:1\n");
}

TEST(SerializationTest, RoundTripThroughStreamAndDirectory) {
  testing::World w = testing::MakeWorld(11, 300, 6);
  CorpusIndex index = BuildIndex(w.corpus);
  for (const auto &[year, y] : index.years()) {
    std::stringstream s;
    WriteYearIndex(y, s);
    EXPECT_EQ(ReadYearIndex(s), y);
  }
  testing::TempDir dir("index-rt");
  auto files = WriteIndex(index, dir / "idx");
  EXPECT_EQ(files.size(), index.years().size());
  EXPECT_EQ(ReadIndex(dir / "idx"), index);
}

TEST(SerializationTest, RejectsCorruptInput) {
  const std::string good =
      "chronoscope-index 1\nyear 1992\ndocuments 1\ntokens 2\ndoc x 2\nterms 1\na 1 0:2\n";
  {
    std::istringstream in(good);
    EXPECT_EQ(ReadYearIndex(in).token_total(), 2u);
  }
  const std::vector<std::string> bad = {
      "",
      "chronoscope-index 2\nyear 1992\ndocuments 0\ntokens 0\nterms 0\n",
      "chronoscope-index 1\nyear 1992\ndocuments 1\ntokens 2\ndoc x 2\nterms 1\na 1 5:2\n",
      "chronoscope-index 1\nyear 1992\ndocuments 1\ntokens 3\ndoc x 2\nterms 1\na 1 0:2\n",
      "chronoscope-index 1\nyear 1992\ndocuments 1\ntokens 2\ndoc x 2\nterms 2\na 1 0:2\n",
      "chronoscope-index 1\nyear 1992\ndocuments 1\ntokens 2\ndoc x 2\nterms 1\na 2 0:2\n",
  };
  for (const std::string &text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(ReadYearIndex(in), DataError) << text;
  }
}

}  // namespace
}  // namespace chronoscope
