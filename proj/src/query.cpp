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

#include "chronoscope/query.hpp"

#include <fstream>
#include <functional>
#include <set>

#include "chronoscope/csv.hpp"
#include "chronoscope/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace chronoscope {

ServiceConfig ParseServiceConfig(const json &j, const fs::path &base_dir) {
  const auto resolve = [&](const std::string &p) {
    fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  ServiceConfig config;
  try {
    if (!j.is_object()) throw DataError("config must be a JSON object");
    static const std::set<std::string> kKeys = {
        "corpus", "lexicon", "gazetteers", "groups", "geo",
        "external", "bind", "port", "cors_origin", "workers"};
    for (const auto &[key, value] : j.items()) {
      if (!kKeys.count(key)) throw DataError("config: unknown key '" + key + "'");
    }
    if (j.contains("corpus")) config.corpus = resolve(j["corpus"].get<std::string>());
    if (j.contains("lexicon")) config.lexicon = resolve(j["lexicon"].get<std::string>());
    if (j.contains("geo")) config.geo = resolve(j["geo"].get<std::string>());
    for (const auto &p : j.value("gazetteers", std::vector<std::string>{})) {
      config.gazetteers.push_back(resolve(p));
    }
    for (const auto &p : j.value("groups", std::vector<std::string>{})) {
      config.groups.push_back(resolve(p));
    }
    if (j.contains("external")) {
      for (const auto &[name, path] : j["external"].items()) {
        config.external[name] = resolve(path.get<std::string>());
      }
    }
    config.bind = j.value("bind", config.bind);
    config.port = j.value("port", config.port);
    config.cors_origin = j.value("cors_origin", config.cors_origin);
    config.workers = j.value("workers", config.workers);
  } catch (const json::exception &e) {
    throw DataError(std::string("config: ") + e.what());
  }
  return config;
}

ServiceConfig LoadServiceConfig(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return ParseServiceConfig(j, path.parent_path());
}

QueryEngine::QueryEngine(Inputs inputs)
    : index_(BuildIndex(inputs.corpus, inputs.workers)),
      mentions_(inputs.corpus, std::make_shared<const Gazetteer>(std::move(inputs.gazetteer)),
                inputs.workers),
      lexicon_(std::move(inputs.lexicon)),
      geo_(std::move(inputs.geo)),
      external_(std::move(inputs.external)) {
  if (lexicon_) sentiment_ = SentimentByYear(index_, *lexicon_);
  for (GroupDefinition &group : inputs.groups) {
    for (const std::string &member : group.members) {
      auto id = gazetteer().Find(member);
      if (!id || gazetteer().entity(*id).kind != EntityKind::kCountry) {
        throw DataError("group '" + group.name + "': member '" + member +
                        "' is not a country in the gazetteer");
      }
    }
    std::string name = group.name;
    if (!groups_.emplace(name, std::move(group)).second) {
      throw DataError("group '" + name + "' is defined twice");
    }
  }
}

std::unique_ptr<QueryEngine> QueryEngine::Load(const ServiceConfig &config) {
  if (config.corpus.empty()) throw UsageError("no corpus configured");
  Inputs inputs;
  inputs.corpus = LoadCorpus(config.corpus);
  if (config.lexicon) inputs.lexicon = LoadLexicon(*config.lexicon);
  inputs.gazetteer = LoadGazetteers(config.gazetteers);
  for (const fs::path &path : config.groups) inputs.groups.push_back(LoadGroup(path));
  if (config.geo) inputs.geo = LoadGeoTable(*config.geo);
  for (const auto &[name, path] : config.external) {
    inputs.external.emplace(name, LoadExternalCsv(path, name));
  }
  inputs.workers = config.workers;
  return std::make_unique<QueryEngine>(std::move(inputs));
}

std::optional<YearRange> QueryEngine::coverage() const {
  if (index_.empty()) return std::nullopt;
  return YearRange{index_.years().begin()->first, index_.years().rbegin()->first};
}

namespace {

// Parameter access with validation against the endpoint's allowed set.
class Params {
 public:
  Params(const QueryParams &params, std::string_view endpoint,
         std::initializer_list<std::string_view> allowed)
      : params_(params) {
    for (const auto &[key, value] : params) {
      bool known = false;
      for (std::string_view a : allowed) known = known || a == key;
      if (!known) {
        throw UsageError("unknown parameter '" + key + "' for " + std::string(endpoint));
      }
    }
  }

  std::optional<std::string> Optional(const std::string &key) const {
    auto it = params_.find(key);
    if (it == params_.end() || Trim(it->second).empty()) return std::nullopt;
    return std::string(Trim(it->second));
  }

  std::string Required(const std::string &key) const {
    auto value = Optional(key);
    if (!value) throw UsageError("missing required parameter '" + key + "'");
    return *value;
  }

  std::optional<long long> Integer(const std::string &key) const {
    auto value = Optional(key);
    if (!value) return std::nullopt;
    auto parsed = ParseInteger(*value);
    if (!parsed) throw UsageError("parameter '" + key + "' must be an integer, got '" + *value + "'");
    return parsed;
  }

 private:
  const QueryParams &params_;
};

std::optional<YearRange> ResolveRange(const Params &p, const QueryEngine &engine) {
  auto from = p.Integer("from");
  auto to = p.Integer("to");
  for (auto year : {from, to}) {
    if (year && (*year < kMinYear || *year > kMaxYear)) {
      throw UsageError("year " + std::to_string(*year) + " outside [1000, 9999]");
    }
  }
  auto coverage = engine.coverage();
  if (!from && coverage) from = coverage->from;
  if (!to && coverage) to = coverage->to;
  if (!from || !to) return std::nullopt;
  return MakeRange(static_cast<int>(*from), static_cast<int>(*to));
}

YearRange RequireRange(const Params &p, const QueryEngine &engine) {
  auto range = ResolveRange(p, engine);
  if (!range) throw UsageError("corpus is empty; pass both from and to");
  return *range;
}

json Envelope(std::string_view endpoint) {
  return {{"schema_version", kSchemaVersion}, {"query", endpoint}};
}

json SeriesResult(std::string_view endpoint, const std::vector<TrendSeries> &series) {
  json result = Envelope(endpoint);
  result["series"] = json::array();
  for (const TrendSeries &s : series) result["series"].push_back(ToJson(s));
  return result;
}

std::vector<std::string> SplitTerms(const std::string &list) {
  std::vector<std::string> terms;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string::npos) end = list.size();
    std::string_view term = Trim(std::string_view(list).substr(start, end - start));
    if (!term.empty()) terms.emplace_back(term);
    start = end + 1;
  }
  return terms;
}

std::size_t ResolveK(const Params &p) {
  auto k = p.Integer("k").value_or(10);
  if (k < 1 || k > 100000) throw UsageError("k must be between 1 and 100000");
  return static_cast<std::size_t>(k);
}

json Trend(const QueryEngine &engine, const QueryParams &params) {
  Params p(params, "trend", {"terms", "from", "to", "mode"});
  const std::string mode = p.Optional("mode").value_or("df");
  if (mode != "df" && mode != "tf") throw UsageError("mode must be df or tf");
  std::vector<std::string> terms = SplitTerms(p.Required("terms"));
  if (terms.empty()) throw UsageError("terms is empty");
  const YearRange range = RequireRange(p, engine);

  std::vector<TrendSeries> series;
  for (const std::string &raw : terms) {
    const std::string term = NormalizeTerm(raw);
    std::vector<TrendSeries::Value> values;
    for (int year = range.from; year <= range.to; ++year) {
      values.emplace_back(mode == "df"
                              ? static_cast<double>(DocFrequency(engine.index(), term, year))
                              : static_cast<double>(TokenFrequency(engine.index(), term, year)));
    }
    series.emplace_back(term, range,
                        mode == "df" ? SeriesMode::kDocCount : SeriesMode::kTokenCount,
                        std::move(values));
  }
  return SeriesResult("trend", series);
}

json Cooccur(const QueryEngine &engine, const QueryParams &params) {
  Params p(params, "cooccur", {"a", "b", "from", "to"});
  const std::string a = NormalizeTerm(p.Required("a"));
  const std::string b = NormalizeTerm(p.Required("b"));
  const YearRange range = RequireRange(p, engine);
  std::vector<TrendSeries::Value> values;
  for (int year = range.from; year <= range.to; ++year) {
    values.emplace_back(static_cast<double>(Cooccurrence(engine.index(), a, b, year)));
  }
  return SeriesResult("cooccur",
                      {TrendSeries(a + " & " + b, range, SeriesMode::kDocCount, std::move(values))});
}

json GroupCooccur(const QueryEngine &engine, const QueryParams &params) {
  Params p(params, "group-cooccur", {"anchor", "group", "region", "from", "to"});
  const std::string anchor = p.Required("anchor");
  const std::string group_name = p.Required("group");
  auto it = engine.groups().find(group_name);
  if (it == engine.groups().end()) {
    std::vector<std::string> names;
    for (const auto &[name, g] : engine.groups()) names.push_back(name);
    throw NotFoundError("unknown group '" + group_name + "'", NearMatches(group_name, names));
  }
  const YearRange range = RequireRange(p, engine);
  return SeriesResult("group-cooccur", {GroupComention(engine.mentions(), anchor, it->second,
                                                       p.Optional("region"), range)});
}

json EntityTrendQuery(const QueryEngine &engine, const QueryParams &params) {
  Params p(params, "entity-trend", {"entity", "with", "from", "to"});
  const std::string entity = p.Required("entity");
  auto with = p.Optional("with");
  const YearRange range = RequireRange(p, engine);
  if (with) {
    return SeriesResult("entity-trend",
                        {ComentionTrend(engine.mentions(), entity, *with, range)});
  }
  return SeriesResult("entity-trend", {EntityTrend(engine.mentions(), entity, range)});
}

json Sentiment(const QueryEngine &engine, const QueryParams &params) {
  Params p(params, "sentiment", {"view", "from", "to"});
  const std::string view = p.Optional("view").value_or("percent");
  if (view != "percent" && view != "per-article") {
    throw UsageError("view must be percent or per-article");
  }
  if (!engine.sentiment()) throw UsageError("no sentiment lexicon configured");
  const YearRange range = RequireRange(p, engine);
  auto [pos, neg] = view == "percent" ? SentimentPercentages(*engine.sentiment(), range)
                                      : SentimentPerArticle(*engine.sentiment(), range);
  json result = SeriesResult("sentiment", {pos, neg});
  result["view"] = view;
  return result;
}

json External(const QueryEngine &engine, const QueryParams &params) {
  Params p(params, "external", {"name", "transform"});
  const std::string name = p.Required("name");
  const std::string transform = p.Optional("transform").value_or("none");
  if (transform != "none" && transform != "yoy") {
    throw UsageError("transform must be none or yoy");
  }
  auto it = engine.external().find(name);
  if (it == engine.external().end()) {
    std::vector<std::string> names;
    for (const auto &[n, s] : engine.external()) names.push_back(n);
    throw NotFoundError("unknown external series '" + name + "'", NearMatches(name, names));
  }
  std::vector<std::string> warnings;
  TrendSeries series = transform == "yoy" ? YoyChange(it->second, &warnings)
                                          : ToTrendSeries(it->second);
  json result = SeriesResult("external", {series});
  result["transform"] = transform;
  result["warnings"] = warnings;
  return result;
}

std::vector<RankedEntity> Rank(const QueryEngine &engine, EntityKind kind,
                               const std::optional<YearRange> &range, std::size_t k) {
  if (!range) return {};
  return TopKEntities(engine.mentions(), kind, *range, k);
}

json RangeJson(const std::optional<YearRange> &range) {
  if (!range) return {{"from", nullptr}, {"to", nullptr}};
  return {{"from", range->from}, {"to", range->to}};
}

json Top(const QueryEngine &engine, const QueryParams &params) {
  Params p(params, "top", {"kind", "from", "to", "k"});
  const EntityKind kind = ParseKind(p.Optional("kind").value_or("country"));
  const std::size_t k = ResolveK(p);
  const auto range = ResolveRange(p, engine);
  json result = Envelope("top");
  result["kind"] = KindName(kind);
  result["k"] = k;
  result.update(RangeJson(range));
  result["ranking"] = json::array();
  for (const RankedEntity &r : Rank(engine, kind, range, k)) {
    result["ranking"].push_back(ToJson(r));
  }
  return result;
}

json Map(const QueryEngine &engine, const QueryParams &params) {
  Params p(params, "map", {"from", "to", "k"});
  const std::size_t k = ResolveK(p);
  const auto range = ResolveRange(p, engine);
  if (!engine.geo()) throw UsageError("no geo table configured");
  std::vector<RankedEntity> ranking = Rank(engine, EntityKind::kCountry, range, k);
  json result = Envelope("map");
  result["k"] = k;
  result.update(RangeJson(range));
  result["markers"] = json::array();
  for (const MapMarker &m : MapPayload(ranking, *engine.geo())) {
    result["markers"].push_back(ToJson(m));
  }
  return result;
}

json Meta(const QueryEngine &engine, const QueryParams &params) {
  Params p(params, "meta", {});
  json result = Envelope("meta");
  result["years"] = RangeJson(engine.coverage());
  result["documents"] = engine.index().doc_count();
  result["tokens"] = engine.index().token_total();
  std::set<std::string> kinds;
  for (const Entity &e : engine.gazetteer().entities()) kinds.insert(std::string(KindName(e.kind)));
  result["entity_kinds"] = kinds;
  result["entities"] = engine.gazetteer().size();
  result["groups"] = json::array();
  for (const auto &[name, group] : engine.groups()) {
    json regions = json::array();
    for (const auto &[region, members] : group.regions) regions.push_back(region);
    result["groups"].push_back({{"name", name}, {"members", group.members}, {"regions", regions}});
  }
  json external = json::array();
  for (const auto &[name, series] : engine.external()) external.push_back(name);
  result["external"] = external;
  result["sentiment"] = engine.sentiment().has_value();
  result["geo"] = engine.geo().has_value();
  return result;
}

using Handler = std::function<json(const QueryEngine &, const QueryParams &)>;

const std::map<std::string, Handler, std::less<>> &Handlers() {
  static const std::map<std::string, Handler, std::less<>> handlers = {
      {"trend", Trend},         {"cooccur", Cooccur},
      {"group-cooccur", GroupCooccur}, {"entity-trend", EntityTrendQuery},
      {"sentiment", Sentiment}, {"external", External},
      {"top", Top},             {"map", Map},
      {"meta", Meta},
  };
  return handlers;
}

}  // namespace

const std::vector<std::string> &QueryEndpoints() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto &[name, handler] : Handlers()) n.push_back(name);
    return n;
  }();
  return names;
}

json RunQuery(const QueryEngine &engine, std::string_view endpoint, const QueryParams &params) {
  auto it = Handlers().find(endpoint);
  if (it == Handlers().end()) {
    throw NotFoundError("unknown query '" + std::string(endpoint) + "'",
                        NearMatches(std::string(endpoint), QueryEndpoints()));
  }
  return it->second(engine, params);
}

std::string RenderCsv(const json &result) {
  try {
    if (result.contains("series")) {
      std::string out;
      for (const json &s : result.at("series")) {
        if (!out.empty()) out += "\n";
        out += ToCsv(TrendSeriesFromJson(s));
      }
      return out;
    }
    if (result.contains("ranking")) {
      std::string out = "rank,canonical,count\n";
      for (const json &r : result.at("ranking")) {
        out += std::to_string(r.at("rank").get<std::size_t>()) + "," +
               CsvEscape(r.at("canonical").get<std::string>()) + "," +
               std::to_string(r.at("count").get<std::size_t>()) + "\n";
      }
      return out;
    }
    if (result.contains("markers")) {
      std::string out = "rank,canonical,latitude,longitude,count\n";
      for (const json &m : result.at("markers")) {
        MapMarker marker = MapMarkerFromJson(m);
        out += std::to_string(marker.rank) + "," + CsvEscape(marker.canonical) + "," +
               FormatNumber(marker.latitude) + "," + FormatNumber(marker.longitude) + "," +
               std::to_string(marker.count) + "\n";
      }
      return out;
    }
    // Flat key,value listing for everything else.
    std::string out = "key,value\n";
    for (const auto &[key, value] : result.items()) {
      out += CsvEscape(key) + "," +
             CsvEscape(value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
    }
    return out;
  } catch (const json::exception &e) {
    throw DataError(std::string("csv rendering: ") + e.what());
  }
}

}  // namespace chronoscope
