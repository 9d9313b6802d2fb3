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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "../support/oracle.hpp"
#include "../support/world.hpp"
#include "chronoscope/error.hpp"

namespace chronoscope {
namespace {

ExternalSeries Series(std::map<int, double> points) { return {"s", std::move(points)}; }

TEST(ExternalCsvTest, ParsesWithHeaderAndRejectsGarbage) {
  std::istringstream in("year,value\n2000,1.5\n2002,3\n");
  ExternalSeries s = ParseExternalCsv(in, "gdp");
  EXPECT_EQ(s.points, (std::map<int, double>{{2000, 1.5}, {2002, 3}}));
  TrendSeries t = ToTrendSeries(s);
  EXPECT_EQ(t.mode(), SeriesMode::kExternal);
  EXPECT_FALSE(t.at(2001));
  EXPECT_EQ(t.at(2002), 3.0);

  std::istringstream dup("2000,1\n2000,2\n");
  EXPECT_THROW(ParseExternalCsv(dup, "x"), DataError);
  std::istringstream bad("2000,abc\n2001,2\n");
  EXPECT_THROW(ParseExternalCsv(bad, "x"), DataError);
  EXPECT_THROW(ToTrendSeries(Series({})), UsageError);
}

TEST(YoyTest, ConstantSeriesIsZero) {
  TrendSeries y = YoyChange(Series({{2000, 5}, {2001, 5}, {2002, 5}}));
  EXPECT_FALSE(y.at(2000));
  EXPECT_EQ(*y.at(2001), 0.0);
  EXPECT_EQ(*y.at(2002), 0.0);
  EXPECT_EQ(y.label(), "s yoy %");
  EXPECT_EQ(y.mode(), SeriesMode::kPercentage);
}

TEST(YoyTest, TenPercent) {
  TrendSeries y = YoyChange(Series({{2000, 100}, {2001, 110}}));
  EXPECT_NEAR(*y.at(2001), 10.0, 1e-9);
}

TEST(YoyTest, GeometricSeriesIsConstant) {
  std::map<int, double> points;
  double v = 250.0;
  for (int year = 1950; year <= 2010; ++year, v *= 1.03) points[year] = v;
  TrendSeries y = YoyChange(Series(points));
  for (int year = 1951; year <= 2010; ++year) EXPECT_NEAR(*y.at(year), 3.0, 1e-9) << year;
}

TEST(YoyTest, BundledGdpFixture) {
  ExternalSeries gdp = LoadExternalCsv(std::filesystem::path(CHRONOSCOPE_DATA_DIR) /
                                           "external/usa_gdp.csv",
                                       "usa-gdp");
  TrendSeries y = YoyChange(gdp);
  EXPECT_NEAR(*y.at(1951), 15.710473649099386, 1e-9);
  EXPECT_NEAR(*y.at(1975), 9.04090085425835, 1e-9);
  EXPECT_NEAR(*y.at(1982), 4.265668849391961, 1e-9);
  EXPECT_NEAR(*y.at(2009), -1.9756396454952252, 1e-9);
  EXPECT_NEAR(*y.at(2010), 3.9431969664527777, 1e-9);
}

TEST(YoyTest, GapsAndZeros) {
  std::vector<std::string> warnings;
  TrendSeries y = YoyChange(Series({{2000, 0}, {2001, 4}, {2003, 8}, {2004, 6}}), &warnings);
  EXPECT_FALSE(y.at(2001));
  EXPECT_FALSE(y.at(2002));
  EXPECT_FALSE(y.at(2003));
  EXPECT_NEAR(*y.at(2004), -25.0, 1e-12);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("2000"), std::string::npos);
  EXPECT_THROW(YoyChange(Series({{2000, 1}, {2002, 2}})), UsageError);
}

TEST(AlignTest, FillsMissingYearsWithNull) {
  TrendSeries a("a", {2000, 2002}, SeriesMode::kDocCount, {1.0, 2.0, 3.0});
  TrendSeries b("b", {2001, 2004}, SeriesMode::kExternal, {10.0, std::nullopt, 30.0, 40.0});
  std::vector<TrendSeries> both = {a, b};
  AlignedTable t = Align(both, {1999, 2003});
  EXPECT_EQ(t.labels, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(t.rows[0], (std::vector<std::optional<double>>{std::nullopt, std::nullopt}));
  EXPECT_EQ(t.rows[2], (std::vector<std::optional<double>>{2.0, 10.0}));
  EXPECT_EQ(t.rows[4], (std::vector<std::optional<double>>{std::nullopt, 30.0}));
  EXPECT_EQ(ToCsv(t), "year,a,b\n1999,,\n2000,1,\n2001,2,10\n2002,3,\n2003,,30\n");

  std::vector<TrendSeries> only = {a};
  AlignedTable same = Align(only, a.range());
  for (int year = 2000; year <= 2002; ++year) EXPECT_EQ(same.rows[year - 2000][0], a.at(year));
}

class RankingTest : public ::testing::Test {
 protected:
  void SetUp() override {
    world_ = testing::MakeWorld(123);
    mentions_ = std::make_unique<MentionIndex>(
        world_.corpus, std::make_shared<const Gazetteer>(world_.entities));
    range_ = {world_.corpus.years().front(), world_.corpus.years().back()};
  }
  testing::World world_;
  std::unique_ptr<MentionIndex> mentions_;
  YearRange range_;
};

TEST_F(RankingTest, MatchesOracleAndPrefixProperty) {
  for (EntityKind kind : {EntityKind::kCountry, EntityKind::kCompany, EntityKind::kPerson}) {
    auto all = TopKEntities(*mentions_, kind, range_, 1000);
    auto expected = oracle::TopK(world_.corpus, world_.entities, kind, range_.from, range_.to, 1000);
    ASSERT_EQ(all.size(), expected.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(all[i].rank, i + 1);
      EXPECT_EQ(all[i].canonical, expected[i].first);
      EXPECT_EQ(all[i].count, expected[i].second);
    }
    for (std::size_t k = 1; k <= all.size(); ++k) {
      auto top = TopKEntities(*mentions_, kind, range_, k);
      ASSERT_EQ(top.size(), k);
      EXPECT_TRUE(std::equal(top.begin(), top.end(), all.begin()));
    }
  }
  EXPECT_THROW(TopKEntities(*mentions_, EntityKind::kCountry, range_, 0), UsageError);
}

TEST(TopKTest, TiesBreakAlphabeticallyAndZerosDrop) {
  std::vector<DocumentRecord> docs;
  const char *bodies[] = {"Japan and USA", "USA, Japan", "Brazil"};
  for (int i = 0; i < 3; ++i) {
    DocumentRecord d;
    d.doc_id = "d" + std::to_string(i);
    d.year = 2000;
    d.body = bodies[i];
    docs.push_back(d);
  }
  MentionIndex mentions(MakeCorpus(docs),
                        std::make_shared<const Gazetteer>(testing::WorldEntities()));
  auto top = TopKEntities(mentions, EntityKind::kCountry, {2000, 2000}, 10);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0], (RankedEntity{1, "Japan", 2}));
  EXPECT_EQ(top[1], (RankedEntity{2, "USA", 2}));
  EXPECT_EQ(top[2], (RankedEntity{3, "Brazil", 1}));
  EXPECT_TRUE(TopKEntities(mentions, EntityKind::kCountry, {1990, 1995}, 10).empty());
  EXPECT_TRUE(TopKEntities(mentions, EntityKind::kPerson, {2000, 2000}, 10).empty());
}

TEST(MapTest, MarkersFollowRanking) {
  GeoTable geo = {{"Japan", {36.2, 138.3}}, {"USA", {39.8, -98.6}}};
  std::vector<RankedEntity> ranking = {{1, "USA", 9}, {2, "Japan", 4}};
  auto markers = MapPayload(ranking, geo);
  ASSERT_EQ(markers.size(), 2u);
  EXPECT_EQ(markers[0], (MapMarker{"USA", 39.8, -98.6, 9, 1}));
  EXPECT_EQ(markers[1].rank, 2u);
  EXPECT_EQ(MapMarkerFromJson(ToJson(markers[1])), markers[1]);
  EXPECT_TRUE(MapPayload({}, geo).empty());

  std::vector<RankedEntity> missing = {{1, "Atlantis", 1}};
  try {
    MapPayload(missing, geo);
    FAIL() << "expected DataError";
  } catch (const DataError &e) {
    EXPECT_NE(std::string(e.what()).find("Atlantis"), std::string::npos);
  }
}

TEST(GeoCsvTest, ParsesAndValidates) {
  std::istringstream in("canonical,latitude,longitude\nUSA,39.8,-98.6\n");
  GeoTable t = ParseGeoCsv(in, "geo");
  EXPECT_EQ(t.at("USA").longitude, -98.6);
  std::istringstream range("USA,91,0\n");
  EXPECT_THROW(ParseGeoCsv(range, "geo"), DataError);
  std::istringstream dup("USA,1,1\nUSA,2,2\n");
  EXPECT_THROW(ParseGeoCsv(dup, "geo"), DataError);

  GeoTable bundled =
      LoadGeoTable(std::filesystem::path(CHRONOSCOPE_DATA_DIR) / "geo/country_centroids.csv");
  Gazetteer countries = LoadGazetteers(
      {std::filesystem::path(CHRONOSCOPE_DATA_DIR) / "gazetteers/countries.json"});
  for (const Entity &e : countries.entities()) {
    EXPECT_TRUE(bundled.count(e.canonical)) << e.canonical;
  }
}

}  // namespace
}  // namespace chronoscope
