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

#include <fstream>

#include "chronoscope/csv.hpp"
#include "chronoscope/error.hpp"
#include "chronoscope/tokenizer.hpp"

namespace chronoscope {

Lexicon ParseLexicon(std::istream &in, std::string source_name) {
  Lexicon lexicon;
  lexicon.source_name = std::move(source_name);
  CsvReader reader(in);
  std::vector<std::string> row;
  bool first = true;
  while (reader.Next(row)) {
    const std::string where = lexicon.source_name + ":" + std::to_string(reader.line());
    if (row.size() == 1 && Trim(row[0]).empty()) continue;
    if (row.size() != 2) throw DataError(where + ": expected word,polarity");
    const std::string word_cell(Trim(row[0]));
    const std::string polarity = FoldCase(Trim(row[1]));
    if (first && FoldCase(word_cell) == "word" && polarity == "polarity") {
      first = false;
      continue;
    }
    first = false;

    std::vector<std::string> tokens = Tokenize(word_cell);
    if (tokens.size() != 1) {
      throw DataError(where + ": lexicon entry '" + word_cell +
                      "' is not a single word");
    }
    std::string &word = tokens.front();
    if (polarity == "positive") {
      lexicon.positive.insert(word);
    } else if (polarity == "negative") {
      lexicon.negative.insert(word);
    } else {
      throw DataError(where + ": unknown polarity '" + std::string(Trim(row[1])) + "'");
    }
  }
  for (const std::string &word : lexicon.positive) {
    if (lexicon.negative.count(word)) {
      throw DataError(lexicon.source_name + ": word '" + word +
                      "' is listed as both positive and negative");
    }
  }
  if (lexicon.positive.empty() && lexicon.negative.empty()) {
    throw DataError(lexicon.source_name + ": lexicon is empty");
  }
  return lexicon;
}

Lexicon LoadLexicon(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read lexicon " + path.string());
  return ParseLexicon(in, path.filename().string());
}

SentimentStats SentimentByYear(const CorpusIndex &index, const Lexicon &lexicon) {
  const auto occurrences = [](const YearIndex &y, const std::set<std::string> &words) {
    std::uint64_t total = 0;
    for (const std::string &word : words) {
      for (const Posting &p : y.Lookup(word)) total += p.count;
    }
    return total;
  };
  SentimentStats stats;
  for (const auto &[year, y] : index.years()) {
    stats[year] = {year, occurrences(y, lexicon.positive),
                   occurrences(y, lexicon.negative), y.token_total(), y.doc_count()};
  }
  return stats;
}

namespace {

template <typename Ratio>
std::pair<TrendSeries, TrendSeries> Project(const SentimentStats &stats, YearRange range,
                                            SeriesMode mode, std::string pos_label,
                                            std::string neg_label, Ratio ratio) {
  std::vector<TrendSeries::Value> pos, neg;
  pos.reserve(range.size());
  neg.reserve(range.size());
  for (int year = range.from; year <= range.to; ++year) {
    auto it = stats.find(year);
    if (it == stats.end()) {
      pos.emplace_back();
      neg.emplace_back();
      continue;
    }
    pos.push_back(ratio(it->second.pos_tokens, it->second));
    neg.push_back(ratio(it->second.neg_tokens, it->second));
  }
  return {TrendSeries(std::move(pos_label), range, mode, std::move(pos)),
          TrendSeries(std::move(neg_label), range, mode, std::move(neg))};
}

}  // namespace

std::pair<TrendSeries, TrendSeries> SentimentPercentages(const SentimentStats &stats,
                                                         YearRange range) {
  return Project(stats, range, SeriesMode::kPercentage, "positive %", "negative %",
                 [](std::uint64_t n, const SentimentYearStats &s) -> TrendSeries::Value {
                   if (s.total_tokens == 0) return std::nullopt;
                   return 100.0 * static_cast<double>(n) /
                          static_cast<double>(s.total_tokens);
                 });
}

std::pair<TrendSeries, TrendSeries> SentimentPerArticle(const SentimentStats &stats,
                                                        YearRange range) {
  return Project(stats, range, SeriesMode::kAverage, "positive per article",
                 "negative per article",
                 [](std::uint64_t n, const SentimentYearStats &s) -> TrendSeries::Value {
                   if (s.doc_count == 0) return std::nullopt;
                   return static_cast<double>(n) / static_cast<double>(s.doc_count);
                 });
}

}  // namespace chronoscope
