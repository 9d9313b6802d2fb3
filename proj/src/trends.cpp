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

#include "chronoscope/trends.hpp"

#include <algorithm>
#include <fstream>

#include "chronoscope/csv.hpp"
#include "chronoscope/error.hpp"

namespace chronoscope {

ExternalSeries ParseExternalCsv(std::istream &in, std::string label) {
  ExternalSeries series{std::move(label), {}};
  CsvReader reader(in);
  std::vector<std::string> row;
  bool first = true;
  while (reader.Next(row)) {
    const std::string where = series.label + ":" + std::to_string(reader.line());
    if (row.size() == 1 && Trim(row[0]).empty()) continue;
    if (row.size() != 2) throw DataError(where + ": expected year,value");
    auto year = ParseInteger(row[0]);
    auto value = ParseNumber(row[1]);
    if (first && !year) {
      first = false;
      continue;
    }
    first = false;
    if (!year || !value) throw DataError(where + ": bad row '" + CsvJoin(row) + "'");
    if (!series.points.emplace(static_cast<int>(*year), *value).second) {
      throw DataError(where + ": duplicate year " + std::to_string(*year));
    }
  }
  return series;
}

ExternalSeries LoadExternalCsv(const std::filesystem::path &path, std::string label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  return ParseExternalCsv(in, std::move(label));
}

TrendSeries ToTrendSeries(const ExternalSeries &series) {
  if (series.points.empty()) {
    throw UsageError("external series '" + series.label + "' has no points");
  }
  YearRange range{series.points.begin()->first, series.points.rbegin()->first};
  std::vector<TrendSeries::Value> values;
  for (int year = range.from; year <= range.to; ++year) {
    auto it = series.points.find(year);
    values.push_back(it == series.points.end() ? TrendSeries::Value() : it->second);
  }
  return TrendSeries(series.label, range, SeriesMode::kExternal, std::move(values));
}

TrendSeries YoyChange(const ExternalSeries &series, std::vector<std::string> *warnings) {
  bool has_pair = false;
  for (const auto &[year, value] : series.points) {
    if (series.points.count(year - 1)) has_pair = true;
  }
  if (!has_pair) {
    throw UsageError("external series '" + series.label +
                     "' needs two consecutive years for a year-over-year change");
  }
  YearRange range{series.points.begin()->first, series.points.rbegin()->first};
  std::vector<TrendSeries::Value> values;
  for (int year = range.from; year <= range.to; ++year) {
    auto current = series.points.find(year);
    auto previous = series.points.find(year - 1);
    if (current == series.points.end() || previous == series.points.end()) {
      values.emplace_back();
    } else if (previous->second == 0) {
      values.emplace_back();
      if (warnings) {
        warnings->push_back(series.label + ": value for " + std::to_string(year - 1) +
                            " is zero; change for " + std::to_string(year) +
                            " left empty");
      }
    } else {
      values.emplace_back(100.0 * (current->second - previous->second) / previous->second);
    }
  }
  return TrendSeries(series.label + " yoy %", range, SeriesMode::kPercentage,
                     std::move(values));
}

AlignedTable Align(std::span<const TrendSeries> series, YearRange range) {
  if (range.from > range.to) throw UsageError("align: empty year range");
  AlignedTable table{range, {}, {}};
  for (const TrendSeries &s : series) table.labels.push_back(s.label());
  for (int year = range.from; year <= range.to; ++year) {
    std::vector<std::optional<double>> row;
    row.reserve(series.size());
    for (const TrendSeries &s : series) row.push_back(s.at(year));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string ToCsv(const AlignedTable &table) {
  std::vector<std::string> header{"year"};
  header.insert(header.end(), table.labels.begin(), table.labels.end());
  std::string out = CsvJoin(header) + "\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    out += std::to_string(table.range.from + static_cast<int>(i));
    for (const auto &cell : table.rows[i]) {
      out += ',';
      if (cell) out += FormatNumber(*cell);
    }
    out += '\n';
  }
  return out;
}

std::vector<RankedEntity> TopKEntities(const MentionIndex &mentions, EntityKind kind,
                                       YearRange range, std::size_t k) {
  if (k < 1) throw UsageError("k must be at least 1");
  const Gazetteer &gazetteer = mentions.gazetteer();
  std::vector<RankedEntity> ranked;
  for (EntityId id = 0; id < gazetteer.size(); ++id) {
    if (gazetteer.entity(id).kind != kind) continue;
    std::size_t count = 0;
    for (int year : mentions.years()) {
      if (range.contains(year)) count += mentions.Docs(year, id).size();
    }
    if (count > 0) ranked.push_back({0, gazetteer.entity(id).canonical, count});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedEntity &a, const RankedEntity &b) {
    if (a.count != b.count) return a.count > b.count;
    return a.canonical < b.canonical;
  });
  if (ranked.size() > k) ranked.resize(k);
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = i + 1;
  return ranked;
}

GeoTable ParseGeoCsv(std::istream &in, const std::string &source) {
  GeoTable table;
  CsvReader reader(in);
  std::vector<std::string> row;
  bool first = true;
  while (reader.Next(row)) {
    const std::string where = source + ":" + std::to_string(reader.line());
    if (row.size() == 1 && Trim(row[0]).empty()) continue;
    if (row.size() != 3) throw DataError(where + ": expected canonical,latitude,longitude");
    auto lat = ParseNumber(row[1]);
    auto lon = ParseNumber(row[2]);
    if (first && !lat && !lon) {
      first = false;
      continue;
    }
    first = false;
    if (!lat || !lon || *lat < -90 || *lat > 90 || *lon < -180 || *lon > 180) {
      throw DataError(where + ": bad coordinates for '" + row[0] + "'");
    }
    if (!table.emplace(std::string(Trim(row[0])), GeoPoint{*lat, *lon}).second) {
      throw DataError(where + ": duplicate entry '" + row[0] + "'");
    }
  }
  return table;
}

GeoTable LoadGeoTable(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  return ParseGeoCsv(in, path.string());
}

std::vector<MapMarker> MapPayload(std::span<const RankedEntity> ranking,
                                  const GeoTable &geo) {
  std::vector<MapMarker> markers;
  markers.reserve(ranking.size());
  for (const RankedEntity &r : ranking) {
    auto it = geo.find(r.canonical);
    if (it == geo.end()) {
      throw DataError("no coordinates for '" + r.canonical + "' in the geo table");
    }
    markers.push_back({r.canonical, it->second.latitude, it->second.longitude, r.count,
                       r.rank});
  }
  return markers;
}

nlohmann::json ToJson(const RankedEntity &entity) {
  return {{"rank", entity.rank}, {"canonical", entity.canonical}, {"count", entity.count}};
}

nlohmann::json ToJson(const MapMarker &marker) {
  return {{"canonical", marker.canonical}, {"latitude", marker.latitude},
          {"longitude", marker.longitude}, {"count", marker.count},
          {"rank", marker.rank}};
}

MapMarker MapMarkerFromJson(const nlohmann::json &j) {
  try {
    return {j.at("canonical").get<std::string>(), j.at("latitude").get<double>(),
            j.at("longitude").get<double>(), j.at("count").get<std::size_t>(),
            j.at("rank").get<std::size_t>()};
  } catch (const nlohmann::json::exception &e) {
    throw DataError(std::string("marker json: ") + e.what());
  }
}

}  // namespace chronoscope
