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

#include "chronoscope/corpus_store.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "../support/world.hpp"
#include "chronoscope/csv.hpp"
#include "chronoscope/error.hpp"
#include "chronoscope/tokenizer.hpp"

namespace chronoscope {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

const ColumnMap kColumns{"date", "body", std::nullopt, std::nullopt};

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(IngestTest, HeaderOnlyYieldsEmptyCorpus) {
  TempDir dir("ingest-empty");
  std::istringstream in("date,body\n");
  IngestResult r = IngestCsv(in, kColumns, dir / "corpus");
  EXPECT_EQ(r.report.rows, 0u);
  EXPECT_EQ(r.report.documents, 0u);
  EXPECT_EQ(r.report.skipped, 0u);
  EXPECT_EQ(LoadCorpus(dir / "corpus").document_count(), 0u);
}

TEST(IngestTest, SkipsEmptyBodiesAndBadDates) {
  TempDir dir("ingest-skip");
  std::istringstream in(
      "date,body\n"
      "1992-03-01,Trade with Japan\n"
      "1993,\"  ... \"\n"
      "1993-07,Growth slows\n"
      "someday,No year here\n");
  IngestResult r = IngestCsv(in, kColumns, dir / "corpus");
  EXPECT_EQ(r.report.rows, 4u);
  EXPECT_EQ(r.report.documents, 2u);
  EXPECT_EQ(r.report.skipped, 2u);
  ASSERT_EQ(r.report.skipped_rows.size(), 2u);
  EXPECT_EQ(r.report.skipped_rows[0].row, 2u);
  EXPECT_EQ(r.report.skipped_rows[0].reason, "empty body");
  EXPECT_EQ(r.report.skipped_rows[1].row, 4u);
  EXPECT_EQ(r.report.skipped_rows[1].reason, "unparseable date");
  EXPECT_EQ(r.report.tokens, 5u);

  Corpus corpus = LoadCorpus(dir / "corpus");
  EXPECT_EQ(corpus.years(), (std::vector<int>{1992, 1993}));
  EXPECT_EQ(corpus.shards[0].documents[0].doc_id, "1992-000001");
  EXPECT_EQ(corpus.shards[1].documents[0].doc_id, "1993-000003");
  EXPECT_EQ(corpus.shards[1].documents[0].body, "Growth slows");
}

TEST(IngestTest, ThreeRowsOneEmpty) {
  TempDir dir("ingest-three");
  std::istringstream in("date,body\n1990,alpha\n1991,\n1992,gamma delta\n");
  IngestResult r = IngestCsv(in, kColumns, dir / "corpus");
  EXPECT_EQ(r.report.documents, 2u);
  EXPECT_EQ(r.report.skipped, 1u);
  EXPECT_EQ(r.report.skipped_rows.at(0).reason, "empty body");
}

TEST(IngestTest, MissingColumnIsNamed) {
  TempDir dir("ingest-col");
  std::istringstream in("when,body\n1990,x\n");
  try {
    IngestCsv(in, kColumns, dir / "corpus");
    FAIL() << "expected an error";
  } catch (const UsageError &e) {
    EXPECT_NE(std::string(e.what()).find("'date'"), std::string::npos) << e.what();
  }
}

TEST(IngestTest, AuthorsAndSubjectsAreSplit) {
  TempDir dir("ingest-lists");
  std::istringstream in(
      "Year,Abstract,Authors,Subjects\n"
      "1998,\"Peter F. Drucker, again\",\"Drucker, Peter; Senge, Peter\",Management\n");
  IngestResult r =
      IngestCsv(in, {"Year", "Abstract", "Authors", "Subjects"}, dir / "corpus");
  ASSERT_EQ(r.report.documents, 1u);
  Corpus corpus = LoadCorpus(dir / "corpus");
  const DocumentRecord &d = corpus.shards.at(0).documents.at(0);
  EXPECT_EQ(d.authors, (std::vector<std::string>{"Drucker, Peter", "Senge, Peter"}));
  EXPECT_EQ(d.subjects, (std::vector<std::string>{"Management"}));
  EXPECT_EQ(d.body, "Peter F. Drucker, again");
}

TEST(IngestTest, RefusesNonEmptyRoot) {
  TempDir dir("ingest-nonempty");
  std::ofstream(dir / "stray.txt") << "x";
  std::istringstream in("date,body\n1990,x\n");
  EXPECT_THROW(IngestCsv(in, kColumns, dir.path()), UsageError);
}

TEST(IngestTest, ThousandRowRoundTrip) {
  TempDir dir("ingest-1000");
  std::mt19937_64 rng(1000);
  std::ostringstream csv;
  csv << "date,body\n";
  std::vector<std::pair<int, std::string>> expected;
  std::size_t blanks = 0;
  for (int i = 0; i < 1000; ++i) {
    const int year = 1950 + static_cast<int>(rng() % 60);
    std::string body;
    if (rng() % 20 == 0) {
      body = " - ";
      ++blanks;
    } else {
      body = "Row " + std::to_string(i) + ", \"quoted\" text\nwith a newline";
      expected.emplace_back(year, body);
    }
    csv << year << "-01-01," << CsvEscape(body) << "\n";
  }
  std::istringstream in(csv.str());
  IngestResult r = IngestCsv(in, kColumns, dir / "corpus");
  EXPECT_EQ(r.report.rows, 1000u);
  EXPECT_EQ(r.report.documents + r.report.skipped, r.report.rows);
  EXPECT_EQ(r.report.skipped, blanks);

  Corpus corpus = LoadCorpus(dir / "corpus");
  ASSERT_EQ(corpus.document_count(), expected.size());
  std::vector<std::pair<int, std::string>> loaded;
  for (const YearShard &s : corpus.shards) {
    for (const DocumentRecord &d : s.documents) loaded.emplace_back(d.year, d.body);
  }
  std::sort(expected.begin(), expected.end());
  std::sort(loaded.begin(), loaded.end());
  EXPECT_EQ(loaded, expected);
}

TEST(ExtractYearTest, Formats) {
  EXPECT_EQ(ExtractYear("1998-04-01"), 1998);
  EXPECT_EQ(ExtractYear("04/01/1998"), 1998);
  EXPECT_EQ(ExtractYear("March 1998"), 1998);
  EXPECT_EQ(ExtractYear("1998"), 1998);
  EXPECT_FALSE(ExtractYear("98-04-01"));
  EXPECT_FALSE(ExtractYear(""));
  EXPECT_FALSE(ExtractYear("0999"));
}

TEST(DocIdTest, PaddedRowNumber) {
  EXPECT_EQ(MakeDocId(1992, 7), "1992-000007");
  EXPECT_EQ(MakeDocId(1992, 1234567), "1992-1234567");
  EXPECT_EQ(MakeDocId(2001, 3, 8), "2001-00000003");
}

std::vector<DocumentRecord> TwoYearDocs() {
  return {{"1993-000002", 1993, {"A. Author"}, {"Strategy"}, "Growth in Japan"},
          {"1992-000001", 1992, {}, {}, "Trade with the USA"},
          {"1993-000003", 1993, {}, {"Finance", "Economics"}, "More trade"}};
}

TEST(CorpusStoreTest, WriteThenLoadRoundTrip) {
  TempDir dir("store-rt");
  auto docs = TwoYearDocs();
  CorpusLayout layout = WriteCorpus(dir / "c", docs);
  EXPECT_EQ(layout.entries.size(), 3u);
  EXPECT_TRUE(fs::exists(dir / "c" / "1992" / "1992-000001.txt"));

  Corpus corpus = LoadCorpus(dir / "c");
  EXPECT_EQ(corpus.years(), (std::vector<int>{1992, 1993}));
  EXPECT_EQ(corpus.document_count(), 3u);
  std::vector<DocumentRecord> loaded;
  for (const YearShard &s : corpus.shards) {
    for (const DocumentRecord &d : s.documents) loaded.push_back(d);
  }
  auto expected = MakeCorpus(docs);
  std::vector<DocumentRecord> flat;
  for (const YearShard &s : expected.shards) {
    for (const DocumentRecord &d : s.documents) flat.push_back(d);
  }
  EXPECT_EQ(loaded, flat);

  const std::string manifest = ReadFile(dir / "c" / "manifest.tsv");
  EXPECT_EQ(manifest.substr(0, manifest.find('\n')),
            "doc_id\tyear\tpath\ttoken_count\tauthors\tsubjects");
  EXPECT_NE(manifest.find("1993-000003\t1993\t1993/1993-000003.txt\t2\t\tFinance; Economics"),
            std::string::npos)
      << manifest;
}

TEST(CorpusStoreTest, MissingFileIsReportedByPath) {
  TempDir dir("store-missing");
  WriteCorpus(dir / "c", TwoYearDocs());
  fs::remove(dir / "c" / "1993" / "1993-000002.txt");
  try {
    LoadCorpus(dir / "c");
    FAIL() << "expected an error";
  } catch (const DataError &e) {
    EXPECT_NE(std::string(e.what()).find("1993/1993-000002.txt"), std::string::npos) << e.what();
  }
}

TEST(CorpusStoreTest, EditedFileFailsTokenCheck) {
  TempDir dir("store-edit");
  WriteCorpus(dir / "c", TwoYearDocs());
  std::ofstream(dir / "c" / "1992" / "1992-000001.txt") << "only three words";
  EXPECT_THROW(LoadCorpus(dir / "c"), DataError);
}

TEST(CorpusStoreTest, MissingManifest) {
  TempDir dir("store-nomanifest");
  EXPECT_THROW(LoadCorpus(dir.path()), DataError);
}

TEST(CorpusStoreTest, RejectsBadRecords) {
  TempDir dir("store-bad");
  std::vector<DocumentRecord> dup = {{"x", 1990, {}, {}, "a"}, {"x", 1991, {}, {}, "b"}};
  EXPECT_THROW(WriteCorpus(dir / "a", dup), DataError);
  std::vector<DocumentRecord> slash = {{"../x", 1990, {}, {}, "a"}};
  EXPECT_THROW(WriteCorpus(dir / "b", slash), DataError);
  std::vector<DocumentRecord> year = {{"y", 999, {}, {}, "a"}};
  EXPECT_THROW(WriteCorpus(dir / "c", year), DataError);
  std::vector<DocumentRecord> empty = {{"z", 1990, {}, {}, "..."}};
  EXPECT_THROW(WriteCorpus(dir / "d", empty), DataError);
}

TEST(CorpusStoreTest, MakeCorpusGroupsByYear) {
  Corpus c = MakeCorpus(TwoYearDocs());
  ASSERT_EQ(c.shards.size(), 2u);
  EXPECT_EQ(c.shards[0].year, 1992);
  EXPECT_EQ(c.shards[1].documents.size(), 2u);
  EXPECT_EQ(MakeCorpus({}).document_count(), 0u);
}

SyntheticOptions SmallSynth(std::uint64_t seed) {
  SyntheticOptions o;
  o.seed = seed;
  o.first_year = 1990;
  o.last_year = 1994;
  o.docs_per_year = 20;
  o.vocabulary = {"market", "growth", "Japan", "United States", "loss"};
  return o;
}

TEST(SynthTest, DeterministicPerSeed) {
  EXPECT_EQ(SynthesizeDocuments(SmallSynth(7)), SynthesizeDocuments(SmallSynth(7)));
  EXPECT_NE(SynthesizeDocuments(SmallSynth(7)), SynthesizeDocuments(SmallSynth(8)));

  TempDir a("synth-a"), b("synth-b");
  GenerateSynthetic(SmallSynth(7), a / "c");
  GenerateSynthetic(SmallSynth(7), b / "c");
  for (const auto &entry : fs::recursive_directory_iterator(a / "c")) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), a / "c");
    EXPECT_EQ(ReadFile(entry.path()), ReadFile(b / "c" / rel)) << rel;
  }
}

TEST(SynthTest, ShapeAndLengths) {
  auto docs = SynthesizeDocuments(SmallSynth(3));
  EXPECT_EQ(docs.size(), 100u);
  for (const DocumentRecord &d : docs) {
    EXPECT_GE(d.year, 1990);
    EXPECT_LE(d.year, 1994);
    EXPECT_GE(CountTokens(d.body), 5u);
  }
  TempDir dir("synth-shards");
  GenerateSynthetic(SmallSynth(3), dir / "c");
  std::vector<std::string> shards;
  for (const auto &entry : fs::directory_iterator(dir / "c")) {
    if (entry.is_directory()) shards.push_back(entry.path().filename().string());
  }
  std::sort(shards.begin(), shards.end());
  EXPECT_EQ(shards, (std::vector<std::string>{"1990", "1991", "1992", "1993", "1994"}));
}

TEST(SynthTest, EdgeCases) {
  SyntheticOptions none = SmallSynth(1);
  none.docs_per_year = 0;
  EXPECT_TRUE(SynthesizeDocuments(none).empty());
  SyntheticOptions empty_vocab = SmallSynth(1);
  empty_vocab.vocabulary.clear();
  EXPECT_THROW(SynthesizeDocuments(empty_vocab), UsageError);
  SyntheticOptions backwards = SmallSynth(1);
  backwards.first_year = 2000;
  backwards.last_year = 1990;
  EXPECT_THROW(SynthesizeDocuments(backwards), UsageError);
}

}  // namespace
}  // namespace chronoscope
