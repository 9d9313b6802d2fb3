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

#ifndef CHRONOSCOPE_TRENDS_HPP_
#define CHRONOSCOPE_TRENDS_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chronoscope/entities.hpp"
#include "chronoscope/series.hpp"
#include "json.hpp"

namespace chronoscope {

// A yearly series from outside the corpus, e.g. national GDP.
struct ExternalSeries {
  std::string label;
  std::map<int, double> points;
};

// Two-column CSV `year,value`. A non-numeric first row is treated as a header.
// Duplicate years are a DataError.
ExternalSeries ParseExternalCsv(std::istream &in, std::string label);
ExternalSeries LoadExternalCsv(const std::filesystem::path &path, std::string label);

// External points as a series over their own year span; gaps are null.
TrendSeries ToTrendSeries(const ExternalSeries &series);

// Year-over-year percent change 100 * (v(y) - v(y-1)) / v(y-1) over the
// series' year span. Years without a predecessor are null; a zero
// predecessor also yields null and appends a message to `warnings`.
// Requires at least one pair of consecutive years (UsageError otherwise).
TrendSeries YoyChange(const ExternalSeries &series,
                      std::vector<std::string> *warnings = nullptr);

// Series laid side by side over a common range. Cells outside a series'
// own range are null.
struct AlignedTable {
  YearRange range;
  std::vector<std::string> labels;
  // rows[i][c]: year range.from + i, series c.
  std::vector<std::vector<std::optional<double>>> rows;
};

AlignedTable Align(std::span<const TrendSeries> series, YearRange range);
// Header `year,<label>...`, empty cells for null.
std::string ToCsv(const AlignedTable &table);

struct RankedEntity {
  std::size_t rank = 0;  // 1-based
  std::string canonical;
  std::size_t count = 0;

  bool operator==(const RankedEntity &) const = default;
};

// Entities of `kind` ranked by the number of documents in `range` that
// mention them; ties broken by canonical name. Entities never mentioned are
// omitted. At most k entries; k must be at least 1.
std::vector<RankedEntity> TopKEntities(const MentionIndex &mentions, EntityKind kind,
                                       YearRange range, std::size_t k);

struct GeoPoint {
  double latitude = 0;
  double longitude = 0;
};

using GeoTable = std::map<std::string, GeoPoint, std::less<>>;

// CSV `canonical,latitude,longitude` with header.
GeoTable ParseGeoCsv(std::istream &in, const std::string &source);
GeoTable LoadGeoTable(const std::filesystem::path &path);

struct MapMarker {
  std::string canonical;
  double latitude = 0;
  double longitude = 0;
  std::size_t count = 0;
  std::size_t rank = 0;

  bool operator==(const MapMarker &) const = default;
};

// One marker per ranked entity, in rank order. A ranked entity missing from
// the geo table is a DataError naming it.
std::vector<MapMarker> MapPayload(std::span<const RankedEntity> ranking,
                                  const GeoTable &geo);

nlohmann::json ToJson(const RankedEntity &entity);
nlohmann::json ToJson(const MapMarker &marker);
MapMarker MapMarkerFromJson(const nlohmann::json &j);

}  // namespace chronoscope

#endif  // CHRONOSCOPE_TRENDS_HPP_
