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

#include "chronoscope/entities.hpp"

#include <algorithm>
#include <fstream>

#include "chronoscope/csv.hpp"
#include "chronoscope/error.hpp"
#include "chronoscope/parallel.hpp"
#include "chronoscope/text_index.hpp"
#include "chronoscope/tokenizer.hpp"

namespace fs = std::filesystem;

namespace chronoscope {

namespace {

constexpr std::pair<EntityKind, std::string_view> kKinds[] = {
    {EntityKind::kCountry, "country"},
    {EntityKind::kCompany, "company"},
    {EntityKind::kPerson, "person"},
};

std::int8_t InitialCase(const std::string &token) {
  const char c = token.front();
  if (c >= 'A' && c <= 'Z') return 1;
  if (c >= 'a' && c <= 'z') return 0;
  return -1;
}

// Two person patterns can fire on the same text unless some token position
// demands opposite cases.
bool Compatible(const std::vector<std::int8_t> &a, const std::vector<std::int8_t> &b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= 0 && b[i] >= 0 && a[i] != b[i]) return false;
  }
  return true;
}

std::string Join(const std::vector<std::string> &tokens) {
  std::string out;
  for (const std::string &t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

nlohmann::json ReadJson(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::string_view KindName(EntityKind kind) {
  for (const auto &[k, name] : kKinds) {
    if (k == kind) return name;
  }
  return "unknown";
}

EntityKind ParseKind(std::string_view name) {
  for (const auto &[k, n] : kKinds) {
    if (n == name) return k;
  }
  throw UsageError("unknown entity kind '" + std::string(name) +
                   "' (expected country, company or person)");
}

Gazetteer::Gazetteer(std::vector<Entity> entities) {
  std::map<std::string, Entity> merged;
  for (Entity &e : entities) {
    if (Trim(e.canonical).empty()) throw DataError("gazetteer entity with empty canonical");
    auto [it, inserted] = merged.try_emplace(e.canonical, e);
    if (!inserted) {
      if (it->second.kind != e.kind) {
        throw DataError("gazetteer: '" + e.canonical + "' declared as both " +
                        std::string(KindName(it->second.kind)) + " and " +
                        std::string(KindName(e.kind)));
      }
      it->second.aliases.insert(it->second.aliases.end(), e.aliases.begin(),
                                e.aliases.end());
    }
  }

  for (auto &[canonical, entity] : merged) {
    entity.aliases.insert(entity.aliases.begin(), canonical);
    // Deduplicate by token sequence; folded unless the kind keeps case.
    std::vector<std::string> unique;
    std::set<std::string> keys;
    for (const std::string &alias : entity.aliases) {
      std::vector<std::string> tokens = TokenizeSurface(alias);
      if (tokens.empty()) {
        throw DataError("gazetteer: alias '" + alias + "' of '" + canonical +
                        "' has no tokens");
      }
      std::string key = Join(tokens);
      if (entity.kind != EntityKind::kPerson) key = FoldCase(key);
      if (keys.insert(key).second) unique.push_back(alias);
    }
    entity.aliases = std::move(unique);
    by_canonical_.emplace(canonical, static_cast<EntityId>(entities_.size()));
    entities_.push_back(std::move(entity));
  }
  Compile();
}

void Gazetteer::Compile() {
  nodes_.assign(1, Node{});
  for (EntityId id = 0; id < entities_.size(); ++id) {
    for (const std::string &alias : entities_[id].aliases) Insert(id, alias);
  }
}

void Gazetteer::Insert(EntityId id, const std::string &alias) {
  const Entity &entity = entities_[id];
  std::vector<std::string> surface = TokenizeSurface(alias);
  std::uint32_t node = 0;
  for (const std::string &token : surface) {
    const std::string key = FoldCase(token);
    auto it = nodes_[node].children.find(key);
    if (it == nodes_[node].children.end()) {
      const auto child = static_cast<std::uint32_t>(nodes_.size());
      nodes_[node].children.emplace(key, child);
      nodes_.emplace_back();
      node = child;
    } else {
      node = it->second;
    }
  }

  Terminal terminal{id, {}};
  if (entity.kind == EntityKind::kPerson) {
    for (const std::string &token : surface) terminal.initial_case.push_back(InitialCase(token));
  }
  for (const Terminal &other : nodes_[node].terminals) {
    if (other.entity == id) {
      if (other.initial_case == terminal.initial_case) return;
      continue;
    }
    const bool both_persons =
        !terminal.initial_case.empty() && !other.initial_case.empty();
    if (!both_persons || Compatible(terminal.initial_case, other.initial_case)) {
      throw DataError("gazetteer: alias '" + alias + "' maps to both '" +
                      entities_[other.entity].canonical + "' and '" + entity.canonical +
                      "'");
    }
  }
  nodes_[node].terminals.push_back(std::move(terminal));
}

std::optional<EntityId> Gazetteer::Find(std::string_view canonical) const {
  auto it = by_canonical_.find(std::string(canonical));
  if (it == by_canonical_.end()) return std::nullopt;
  return it->second;
}

EntityId Gazetteer::Require(std::string_view canonical) const {
  if (auto id = Find(canonical)) return *id;
  std::vector<std::string> names;
  names.reserve(entities_.size());
  for (const Entity &e : entities_) names.push_back(e.canonical);
  throw NotFoundError("unknown entity '" + std::string(canonical) + "'",
                      NearMatches(std::string(canonical), names));
}

std::vector<EntityId> Gazetteer::MatchIds(std::string_view text) const {
  std::vector<EntityId> found;
  if (entities_.empty()) return found;
  const std::vector<std::string> surface = TokenizeSurface(text);
  std::vector<std::string> folded;
  folded.reserve(surface.size());
  for (const std::string &t : surface) folded.push_back(FoldCase(t));

  const auto accepts = [&](const Node &node, std::size_t begin) -> std::optional<EntityId> {
    for (const Terminal &t : node.terminals) {
      bool ok = true;
      for (std::size_t k = 0; k < t.initial_case.size() && ok; ++k) {
        const std::int8_t want = t.initial_case[k];
        ok = want < 0 || InitialCase(surface[begin + k]) == want;
      }
      if (ok) return t.entity;
    }
    return std::nullopt;
  };

  std::size_t i = 0;
  while (i < folded.size()) {
    std::size_t best_length = 0;
    EntityId best_entity = 0;
    std::uint32_t node = 0;
    for (std::size_t j = i; j < folded.size(); ++j) {
      auto it = nodes_[node].children.find(folded[j]);
      if (it == nodes_[node].children.end()) break;
      node = it->second;
      if (auto entity = accepts(nodes_[node], i)) {
        best_length = j - i + 1;
        best_entity = *entity;
      }
    }
    if (best_length > 0) {
      found.push_back(best_entity);
      i += best_length;
    } else {
      ++i;
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

std::vector<Entity> ParseGazetteerJson(const nlohmann::json &j, const std::string &source) {
  if (!j.is_array()) throw DataError(source + ": gazetteer must be a JSON array");
  std::vector<Entity> entities;
  try {
    for (const nlohmann::json &item : j) {
      Entity e;
      e.canonical = item.at("canonical").get<std::string>();
      try {
        e.kind = ParseKind(item.at("kind").get<std::string>());
      } catch (const UsageError &err) {
        throw DataError(source + ": " + err.what());
      }
      if (item.contains("aliases")) {
        e.aliases = item.at("aliases").get<std::vector<std::string>>();
      }
      entities.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception &e) {
    throw DataError(source + ": " + e.what());
  }
  return entities;
}

Gazetteer LoadGazetteers(const std::vector<fs::path> &paths) {
  std::vector<Entity> all;
  for (const fs::path &path : paths) {
    std::vector<Entity> part = ParseGazetteerJson(ReadJson(path), path.string());
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return Gazetteer(std::move(all));
}

std::set<std::string> MatchEntities(const DocumentRecord &doc, const Gazetteer &gazetteer) {
  std::set<std::string> names;
  for (EntityId id : gazetteer.MatchIds(doc.body)) {
    names.insert(gazetteer.entity(id).canonical);
  }
  return names;
}

GroupDefinition ParseGroupJson(const nlohmann::json &j, const std::string &source) {
  GroupDefinition group;
  try {
    group.name = j.at("name").get<std::string>();
    for (const std::string &m : j.at("members").get<std::vector<std::string>>()) {
      group.members.insert(m);
    }
    if (j.contains("regions")) {
      for (const auto &[region, members] : j.at("regions").items()) {
        auto list = members.get<std::vector<std::string>>();
        group.regions[region] = std::set<std::string>(list.begin(), list.end());
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw DataError(source + ": " + e.what());
  }
  if (group.name.empty()) throw DataError(source + ": group name is empty");
  std::map<std::string, std::string> owner;
  for (const auto &[region, members] : group.regions) {
    for (const std::string &m : members) {
      if (!group.members.count(m)) {
        throw DataError(source + ": region '" + region + "' lists non-member '" + m + "'");
      }
      auto [it, inserted] = owner.emplace(m, region);
      if (!inserted) {
        throw DataError(source + ": '" + m + "' appears in regions '" + it->second +
                        "' and '" + region + "'");
      }
    }
  }
  return group;
}

GroupDefinition LoadGroup(const fs::path &path) {
  return ParseGroupJson(ReadJson(path), path.string());
}

MentionIndex::MentionIndex(const Corpus &corpus, std::shared_ptr<const Gazetteer> gazetteer,
                           unsigned workers)
    : gazetteer_(std::move(gazetteer)) {
  if (!gazetteer_) gazetteer_ = std::make_shared<const Gazetteer>();
  std::vector<YearMentions> built(corpus.shards.size());
  ParallelFor(corpus.shards.size(), workers, [&](std::size_t s) {
    const YearShard &shard = corpus.shards[s];
    YearMentions &m = built[s];
    m.doc_count = shard.documents.size();
    m.by_entity.resize(gazetteer_->size());
    for (std::size_t ordinal = 0; ordinal < shard.documents.size(); ++ordinal) {
      for (EntityId id : gazetteer_->MatchIds(shard.documents[ordinal].body)) {
        m.by_entity[id].push_back(static_cast<std::uint32_t>(ordinal));
      }
    }
  });
  for (std::size_t s = 0; s < corpus.shards.size(); ++s) {
    years_.emplace(corpus.shards[s].year, std::move(built[s]));
  }
}

std::vector<int> MentionIndex::years() const {
  std::vector<int> result;
  for (const auto &[year, m] : years_) result.push_back(year);
  return result;
}

std::span<const std::uint32_t> MentionIndex::Docs(int year, EntityId entity) const {
  auto it = years_.find(year);
  if (it == years_.end() || entity >= it->second.by_entity.size()) return {};
  return it->second.by_entity[entity];
}

namespace {

std::size_t CountCommon(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

template <typename PerYear>
TrendSeries Collect(std::string label, YearRange range, PerYear per_year) {
  std::vector<TrendSeries::Value> values;
  values.reserve(range.size());
  for (int year = range.from; year <= range.to; ++year) {
    values.emplace_back(static_cast<double>(per_year(year)));
  }
  return TrendSeries(std::move(label), range, SeriesMode::kDocCount, std::move(values));
}

}  // namespace

TrendSeries EntityTrend(const MentionIndex &mentions, std::string_view canonical,
                        YearRange range) {
  const EntityId id = mentions.gazetteer().Require(canonical);
  return Collect(std::string(canonical), range,
                 [&](int year) { return mentions.Docs(year, id).size(); });
}

TrendSeries ComentionTrend(const MentionIndex &mentions, std::string_view a,
                           std::string_view b, YearRange range) {
  const EntityId ia = mentions.gazetteer().Require(a);
  const EntityId ib = mentions.gazetteer().Require(b);
  return Collect(std::string(a) + " & " + std::string(b), range, [&](int year) {
    return CountCommon(mentions.Docs(year, ia), mentions.Docs(year, ib));
  });
}

TrendSeries GroupComention(const MentionIndex &mentions, std::string_view anchor,
                           const GroupDefinition &group,
                           const std::optional<std::string> &region, YearRange range) {
  const Gazetteer &gazetteer = mentions.gazetteer();
  const EntityId anchor_id = gazetteer.Require(anchor);

  const std::set<std::string> *selected = &group.members;
  std::string label = std::string(anchor) + " ~ " + group.name;
  if (region) {
    auto it = group.regions.find(*region);
    if (it == group.regions.end()) {
      std::vector<std::string> names;
      for (const auto &[name, members] : group.regions) names.push_back(name);
      throw NotFoundError("group '" + group.name + "' has no region '" + *region + "'",
                          NearMatches(*region, names));
    }
    selected = &it->second;
    label += " / " + *region;
  }
  if (selected->count(std::string(anchor))) {
    throw UsageError("anchor '" + std::string(anchor) + "' is itself a member of " +
                     (region ? "region '" + *region + "'" : "group '" + group.name + "'"));
  }
  std::vector<EntityId> members;
  for (const std::string &m : *selected) members.push_back(gazetteer.Require(m));

  return Collect(std::move(label), range, [&](int year) {
    std::size_t total = 0;
    for (EntityId m : members) {
      total += CountCommon(mentions.Docs(year, anchor_id), mentions.Docs(year, m));
    }
    return total;
  });
}

}  // namespace chronoscope
