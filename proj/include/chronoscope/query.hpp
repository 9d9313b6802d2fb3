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

#ifndef CHRONOSCOPE_QUERY_HPP_
#define CHRONOSCOPE_QUERY_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chronoscope/corpus_store.hpp"
#include "chronoscope/entities.hpp"
#include "chronoscope/sentiment.hpp"
#include "chronoscope/text_index.hpp"
#include "chronoscope/trends.hpp"
#include "json.hpp"

namespace chronoscope {

// Everything a query process needs to load. Relative paths in a config file
// are resolved against the file's directory.
struct ServiceConfig {
  std::filesystem::path corpus;
  std::optional<std::filesystem::path> lexicon;
  std::vector<std::filesystem::path> gazetteers;
  std::vector<std::filesystem::path> groups;
  std::optional<std::filesystem::path> geo;
  std::map<std::string, std::filesystem::path> external;
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::string cors_origin;
  unsigned workers = 1;
};

// Environment variable naming the config file when no --config is given.
inline constexpr const char *kConfigEnvVar = "CHRONOSCOPE_CONFIG";

// JSON keys: corpus, lexicon, gazetteers, groups, geo, external (object of
// name -> path), bind, port, cors_origin, workers.
ServiceConfig ParseServiceConfig(const nlohmann::json &j,
                                 const std::filesystem::path &base_dir);
ServiceConfig LoadServiceConfig(const std::filesystem::path &path);

// Loaded corpus, indexes and reference data. Immutable after construction,
// so one engine can serve concurrent queries.
class QueryEngine {
 public:
  struct Inputs {
    Corpus corpus;
    std::optional<Lexicon> lexicon;
    Gazetteer gazetteer;
    std::vector<GroupDefinition> groups;
    std::optional<GeoTable> geo;
    std::map<std::string, ExternalSeries> external;
    unsigned workers = 1;
  };

  // Builds the term and mention indexes. Throws DataError when a group
  // member is not a country in the gazetteer or group names collide.
  explicit QueryEngine(Inputs inputs);

  // Loads every configured path; any missing or invalid file throws.
  static std::unique_ptr<QueryEngine> Load(const ServiceConfig &config);

  const CorpusIndex &index() const { return index_; }
  const MentionIndex &mentions() const { return mentions_; }
  const Gazetteer &gazetteer() const { return mentions_.gazetteer(); }
  const std::optional<Lexicon> &lexicon() const { return lexicon_; }
  const std::optional<SentimentStats> &sentiment() const { return sentiment_; }
  const std::map<std::string, GroupDefinition> &groups() const { return groups_; }
  const std::optional<GeoTable> &geo() const { return geo_; }
  const std::map<std::string, ExternalSeries> &external() const { return external_; }
  // First and last corpus year; nullopt for an empty corpus.
  std::optional<YearRange> coverage() const;

 private:
  CorpusIndex index_;
  MentionIndex mentions_;
  std::optional<Lexicon> lexicon_;
  std::optional<SentimentStats> sentiment_;
  std::map<std::string, GroupDefinition> groups_;
  std::optional<GeoTable> geo_;
  std::map<std::string, ExternalSeries> external_;
};

using QueryParams = std::map<std::string, std::string>;

// Query endpoints shared by the CLI and the HTTP service:
//   trend          terms, from, to, mode (df|tf)
//   cooccur        a, b, from, to
//   group-cooccur  anchor, group, region, from, to
//   entity-trend   entity, with, from, to
//   sentiment      view (percent|per-article), from, to
//   external       name, transform (none|yoy)
//   top            kind, from, to, k
//   map            from, to, k
//   meta
// Missing from/to default to the corpus coverage. Every response carries
// "schema_version" and "query". Throws UsageError for malformed or unknown
// parameters, NotFoundError for unknown names, DataError for data faults.
nlohmann::json RunQuery(const QueryEngine &engine, std::string_view endpoint,
                        const QueryParams &params);

const std::vector<std::string> &QueryEndpoints();

// CSV rendering of a RunQuery result. Series results become TrendSeries CSV
// blocks separated by a blank line.
std::string RenderCsv(const nlohmann::json &result);

}  // namespace chronoscope

#endif  // CHRONOSCOPE_QUERY_HPP_
