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

#ifndef CHRONOSCOPE_ENTITIES_HPP_
#define CHRONOSCOPE_ENTITIES_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chronoscope/corpus_store.hpp"
#include "chronoscope/series.hpp"
#include "json.hpp"

namespace chronoscope {

enum class EntityKind { kCountry, kCompany, kPerson };

std::string_view KindName(EntityKind kind);
// Throws UsageError for anything but country, company or person.
EntityKind ParseKind(std::string_view name);

struct Entity {
  std::string canonical;
  EntityKind kind = EntityKind::kCountry;
  std::vector<std::string> aliases;
};

using EntityId = std::uint32_t;

// Dictionary of closed-class entities compiled into a token-sequence trie.
//
// Countries and companies match case-insensitively. Person aliases also
// require each name token's initial letter to have the alias's case, so
// "Peter Drucker" does not fire on "peter drucker". When candidates overlap,
// the longest alias starting at the leftmost position wins and matching
// resumes after it.
class Gazetteer {
 public:
  Gazetteer() = default;

  // Entities are sorted by canonical name; entries sharing a canonical and
  // kind are merged. The canonical is added to its own aliases. Throws
  // DataError when one surface form could resolve to two canonicals, or an
  // alias has no tokens.
  explicit Gazetteer(std::vector<Entity> entities);

  const std::vector<Entity> &entities() const { return entities_; }
  const Entity &entity(EntityId id) const { return entities_[id]; }
  std::size_t size() const { return entities_.size(); }

  std::optional<EntityId> Find(std::string_view canonical) const;
  // Throws NotFoundError listing near matches.
  EntityId Require(std::string_view canonical) const;

  // Ids of all entities mentioned in `text`, ascending.
  std::vector<EntityId> MatchIds(std::string_view text) const;

 private:
  struct Terminal {
    EntityId entity;
    // Per alias token: 1 upper-case initial, 0 lower-case, -1 either.
    // Empty for case-insensitive kinds.
    std::vector<std::int8_t> initial_case;
  };
  struct Node {
    std::unordered_map<std::string, std::uint32_t> children;
    std::vector<Terminal> terminals;
  };

  void Compile();
  void Insert(EntityId id, const std::string &alias);

  std::vector<Entity> entities_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, EntityId> by_canonical_;
};

// Parses the gazetteer JSON layout: [{"canonical", "kind", "aliases": [...]}].
std::vector<Entity> ParseGazetteerJson(const nlohmann::json &j, const std::string &source);
// Loads and merges several gazetteer files into one compiled gazetteer.
Gazetteer LoadGazetteers(const std::vector<std::filesystem::path> &paths);

// Canonical names of entities present in the document body.
std::set<std::string> MatchEntities(const DocumentRecord &doc, const Gazetteer &gazetteer);

// A named set of countries, optionally split into disjoint regions.
struct GroupDefinition {
  std::string name;
  std::set<std::string> members;
  std::map<std::string, std::set<std::string>> regions;
};

// Parses {"name", "members": [...], "regions": {name: [...]}}. Throws
// DataError when regions overlap or name non-members.
GroupDefinition ParseGroupJson(const nlohmann::json &j, const std::string &source);
GroupDefinition LoadGroup(const std::filesystem::path &path);

// Entity mentions of every document, per year: for each entity, the sorted
// ordinals of the documents mentioning it. Immutable once built.
class MentionIndex {
 public:
  MentionIndex(const Corpus &corpus, std::shared_ptr<const Gazetteer> gazetteer,
               unsigned workers = 1);

  const Gazetteer &gazetteer() const { return *gazetteer_; }
  std::vector<int> years() const;
  // Sorted document ordinals; empty when the year or entity has none.
  std::span<const std::uint32_t> Docs(int year, EntityId entity) const;

 private:
  struct YearMentions {
    std::size_t doc_count = 0;
    std::vector<std::vector<std::uint32_t>> by_entity;
  };

  std::shared_ptr<const Gazetteer> gazetteer_;
  std::map<int, YearMentions> years_;
};

// Documents mentioning `canonical`, per year.
TrendSeries EntityTrend(const MentionIndex &mentions, std::string_view canonical,
                        YearRange range);

// Documents mentioning both entities, per year.
TrendSeries ComentionTrend(const MentionIndex &mentions, std::string_view a,
                           std::string_view b, YearRange range);

// Sum over the selected members m of ComentionTrend(anchor, m). A document
// mentioning the anchor with k selected members adds k. `region` selects a
// region of the group; otherwise all members are used. The anchor must not
// be one of the selected members.
TrendSeries GroupComention(const MentionIndex &mentions, std::string_view anchor,
                           const GroupDefinition &group,
                           const std::optional<std::string> &region, YearRange range);

}  // namespace chronoscope

#endif  // CHRONOSCOPE_ENTITIES_HPP_
