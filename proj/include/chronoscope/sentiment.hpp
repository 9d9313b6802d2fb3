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

#ifndef CHRONOSCOPE_SENTIMENT_HPP_
#define CHRONOSCOPE_SENTIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "chronoscope/text_index.hpp"
#include "chronoscope/series.hpp"

namespace chronoscope {

// Polarity word lists. Words are single index tokens, case-folded.
struct Lexicon {
  std::set<std::string> positive;
  std::set<std::string> negative;
  std::string source_name;
};

// Parses a two-column CSV `word,polarity` with polarity "positive" or
// "negative" (case-insensitive). A leading `word,polarity` header row is
// optional; blank lines are ignored. Throws DataError for a word listed under
// both polarities, an unknown polarity, a word that is not a single token,
// or an empty result.
Lexicon ParseLexicon(std::istream &in, std::string source_name);
Lexicon LoadLexicon(const std::filesystem::path &path);

struct SentimentYearStats {
  int year = 0;
  std::uint64_t pos_tokens = 0;
  std::uint64_t neg_tokens = 0;
  std::uint64_t total_tokens = 0;
  std::uint64_t doc_count = 0;

  bool operator==(const SentimentYearStats &) const = default;
};

using SentimentStats = std::map<int, SentimentYearStats>;

// Token-occurrence counts of lexicon words per indexed year. No negation
// handling: every occurrence counts.
SentimentStats SentimentByYear(const CorpusIndex &index, const Lexicon &lexicon);

// 100 * pos_tokens / total_tokens and the negative counterpart, over `range`.
// Years without tokens are null.
std::pair<TrendSeries, TrendSeries> SentimentPercentages(const SentimentStats &stats,
                                                         YearRange range);

// pos_tokens / doc_count and neg_tokens / doc_count over `range`. Years
// without documents are null.
std::pair<TrendSeries, TrendSeries> SentimentPerArticle(const SentimentStats &stats,
                                                        YearRange range);

}  // namespace chronoscope

#endif  // CHRONOSCOPE_SENTIMENT_HPP_
