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

#ifndef CHRONOSCOPE_SERIES_HPP_
#define CHRONOSCOPE_SERIES_HPP_

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace chronoscope {

inline constexpr int kSchemaVersion = 1;

// Inclusive year interval.
struct YearRange {
  int from = 0;
  int to = 0;

  std::size_t size() const { return from <= to ? static_cast<std::size_t>(to - from + 1) : 0; }
  bool contains(int year) const { return year >= from && year <= to; }
  bool operator==(const YearRange &) const = default;
};

// Validated range; throws UsageError when from > to.
YearRange MakeRange(int from, int to);

// "1990s" -> [1990, 1999].
YearRange ParseDecade(std::string_view decade);

enum class SeriesMode {
  kDocCount,
  kTokenCount,
  kPercentage,
  kAverage,
  kExternal,
};

std::string_view ModeName(SeriesMode mode);
// Throws UsageError for unknown names.
SeriesMode ParseMode(std::string_view name);

// A (year -> value) curve over a contiguous year range. Missing data is
// null, never zero.
class TrendSeries {
 public:
  using Value = std::optional<double>;

  TrendSeries() = default;
  // Throws DataError if the value count does not match the range, or if a
  // count-mode value is negative or fractional, or any value is not finite.
  TrendSeries(std::string label, YearRange range, SeriesMode mode,
              std::vector<Value> values);

  const std::string &label() const { return label_; }
  YearRange range() const { return range_; }
  SeriesMode mode() const { return mode_; }
  const std::vector<Value> &values() const { return values_; }

  // Value for `year`; null outside the range.
  Value at(int year) const;

  bool operator==(const TrendSeries &) const = default;

 private:
  std::string label_;
  YearRange range_;
  SeriesMode mode_ = SeriesMode::kDocCount;
  std::vector<Value> values_;
};

// {"label":..., "mode":..., "from":..., "to":..., "values":{"1992":1,...}}
// Values are keyed by year; null for missing data.
nlohmann::json ToJson(const TrendSeries &series);
TrendSeries TrendSeriesFromJson(const nlohmann::json &j);

// CSV layout:
//   label,mode
//   <label>,<mode>
//   year,value
//   <year>,<value or empty>     one row per year of the range
std::string ToCsv(const TrendSeries &series);
TrendSeries ParseTrendSeriesCsv(std::istream &in);

}  // namespace chronoscope

#endif  // CHRONOSCOPE_SERIES_HPP_
