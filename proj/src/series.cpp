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

#include "chronoscope/series.hpp"

#include <cmath>

#include "chronoscope/csv.hpp"
#include "chronoscope/error.hpp"

namespace chronoscope {

namespace {

struct ModeEntry {
  SeriesMode mode;
  std::string_view name;
};

constexpr ModeEntry kModes[] = {
    {SeriesMode::kDocCount, "doc_count"},   {SeriesMode::kTokenCount, "token_count"},
    {SeriesMode::kPercentage, "percentage"}, {SeriesMode::kAverage, "average"},
    {SeriesMode::kExternal, "external"},
};

bool IsCountMode(SeriesMode mode) {
  return mode == SeriesMode::kDocCount || mode == SeriesMode::kTokenCount;
}

}  // namespace

YearRange MakeRange(int from, int to) {
  if (from > to) {
    throw UsageError("year range is inverted: from " + std::to_string(from) +
                     " > to " + std::to_string(to));
  }
  return {from, to};
}

YearRange ParseDecade(std::string_view decade) {
  if (decade.size() == 5 && decade.back() == 's') {
    auto start = ParseInteger(decade.substr(0, 4));
    if (start && *start % 10 == 0) {
      return {static_cast<int>(*start), static_cast<int>(*start) + 9};
    }
  }
  throw UsageError("expected a decade like 1990s, got '" + std::string(decade) + "'");
}

std::string_view ModeName(SeriesMode mode) {
  for (const ModeEntry &e : kModes) {
    if (e.mode == mode) return e.name;
  }
  return "unknown";
}

SeriesMode ParseMode(std::string_view name) {
  for (const ModeEntry &e : kModes) {
    if (e.name == name) return e.mode;
  }
  throw UsageError("unknown series mode '" + std::string(name) + "'");
}

TrendSeries::TrendSeries(std::string label, YearRange range, SeriesMode mode,
                         std::vector<Value> values)
    : label_(std::move(label)), range_(range), mode_(mode), values_(std::move(values)) {
  if (range_.from > range_.to) throw DataError("series '" + label_ + "': inverted range");
  if (values_.size() != range_.size()) {
    throw DataError("series '" + label_ + "': " + std::to_string(values_.size()) +
                    " values for " + std::to_string(range_.size()) + " years");
  }
  for (const Value &v : values_) {
    if (!v) continue;
    if (!std::isfinite(*v)) throw DataError("series '" + label_ + "': non-finite value");
    if (IsCountMode(mode_) && (*v < 0 || std::floor(*v) != *v)) {
      throw DataError("series '" + label_ + "': count value " + FormatNumber(*v) +
                      " is not a non-negative integer");
    }
  }
}

TrendSeries::Value TrendSeries::at(int year) const {
  if (!range_.contains(year)) return std::nullopt;
  return values_[static_cast<std::size_t>(year - range_.from)];
}

nlohmann::json ToJson(const TrendSeries &series) {
  nlohmann::json values = nlohmann::json::object();
  for (int year = series.range().from; year <= series.range().to; ++year) {
    TrendSeries::Value v = series.at(year);
    const std::string key = std::to_string(year);
    if (!v) {
      values[key] = nullptr;
    } else if (IsCountMode(series.mode())) {
      values[key] = static_cast<long long>(*v);
    } else {
      values[key] = *v;
    }
  }
  return {{"label", series.label()},
          {"mode", ModeName(series.mode())},
          {"from", series.range().from},
          {"to", series.range().to},
          {"values", std::move(values)}};
}

TrendSeries TrendSeriesFromJson(const nlohmann::json &j) {
  try {
    YearRange range{j.at("from").get<int>(), j.at("to").get<int>()};
    if (range.from > range.to) throw DataError("series json: inverted range");
    const nlohmann::json &values = j.at("values");
    if (values.size() != range.size()) {
      throw DataError("series json: value count does not match range");
    }
    std::vector<TrendSeries::Value> parsed;
    parsed.reserve(range.size());
    for (int year = range.from; year <= range.to; ++year) {
      const nlohmann::json &v = values.at(std::to_string(year));
      if (v.is_null()) {
        parsed.emplace_back();
      } else {
        parsed.emplace_back(v.get<double>());
      }
    }
    return TrendSeries(j.at("label").get<std::string>(),
                       range, ParseMode(j.at("mode").get<std::string>()),
                       std::move(parsed));
  } catch (const nlohmann::json::exception &e) {
    throw DataError(std::string("series json: ") + e.what());
  }
}

std::string ToCsv(const TrendSeries &series) {
  std::string out = "label,mode\n";
  out += CsvJoin({series.label(), std::string(ModeName(series.mode()))}) + "\n";
  out += "year,value\n";
  for (int year = series.range().from; year <= series.range().to; ++year) {
    TrendSeries::Value v = series.at(year);
    out += std::to_string(year) + "," + (v ? FormatNumber(*v) : std::string()) + "\n";
  }
  return out;
}

TrendSeries ParseTrendSeriesCsv(std::istream &in) {
  CsvReader reader(in);
  std::vector<std::string> row;
  const auto expect = [&](std::string_view what) {
    if (!reader.Next(row)) throw DataError("series csv: missing " + std::string(what));
  };
  expect("header");
  if (row != std::vector<std::string>{"label", "mode"}) {
    throw DataError("series csv: expected 'label,mode' header");
  }
  expect("label row");
  if (row.size() != 2) throw DataError("series csv: malformed label row");
  std::string label = row[0];
  SeriesMode mode = ParseMode(row[1]);
  expect("value header");
  if (row != std::vector<std::string>{"year", "value"}) {
    throw DataError("series csv: expected 'year,value' header");
  }

  std::vector<int> years;
  std::vector<TrendSeries::Value> values;
  while (reader.Next(row)) {
    if (row.size() == 1 && row[0].empty()) break;  // blank line ends the block
    if (row.size() != 2) throw DataError("series csv: malformed row");
    auto year = ParseInteger(row[0]);
    if (!year) throw DataError("series csv: bad year '" + row[0] + "'");
    if (!years.empty() && *year != years.back() + 1) {
      throw DataError("series csv: years are not contiguous at " + row[0]);
    }
    years.push_back(static_cast<int>(*year));
    if (Trim(row[1]).empty()) {
      values.emplace_back();
    } else {
      auto v = ParseNumber(row[1]);
      if (!v) throw DataError("series csv: bad value '" + row[1] + "'");
      values.emplace_back(*v);
    }
  }
  if (years.empty()) throw DataError("series csv: no rows");
  return TrendSeries(std::move(label), {years.front(), years.back()}, mode,
                     std::move(values));
}

}  // namespace chronoscope
