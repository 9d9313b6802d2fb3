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

#include "chronoscope/text_index.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "chronoscope/csv.hpp"
#include "chronoscope/error.hpp"
#include "chronoscope/parallel.hpp"
#include "chronoscope/tokenizer.hpp"

namespace fs = std::filesystem;

namespace chronoscope {

YearIndex::YearIndex(const YearShard &shard) : year_(shard.year) {
  doc_ids_.reserve(shard.documents.size());
  doc_token_counts_.reserve(shard.documents.size());
  for (std::size_t ordinal = 0; ordinal < shard.documents.size(); ++ordinal) {
    const DocumentRecord &doc = shard.documents[ordinal];
    if (ordinal > 0 && !(doc_ids_.back() < doc.doc_id)) {
      throw DataError("year " + std::to_string(year_) +
                      ": documents not strictly sorted by doc_id at " + doc.doc_id);
    }
    doc_ids_.push_back(doc.doc_id);

    std::unordered_map<std::string, std::uint32_t> counts;
    std::vector<std::string> tokens = Tokenize(doc.body);
    for (std::string &token : tokens) ++counts[std::move(token)];
    doc_token_counts_.push_back(static_cast<std::uint32_t>(tokens.size()));
    token_total_ += tokens.size();

    // Ordinals grow monotonically, so appending keeps every list sorted.
    for (auto &[term, count] : counts) {
      postings_[term].push_back({static_cast<std::uint32_t>(ordinal), count});
    }
  }
}

std::span<const Posting> YearIndex::Lookup(std::string_view term) const {
  auto it = postings_.find(term);
  if (it == postings_.end()) return {};
  return it->second;
}

const YearIndex *CorpusIndex::Find(int year) const {
  auto it = years_.find(year);
  return it == years_.end() ? nullptr : &it->second;
}

std::uint64_t CorpusIndex::token_total() const {
  std::uint64_t total = 0;
  for (const auto &[year, index] : years_) total += index.token_total();
  return total;
}

std::size_t CorpusIndex::doc_count() const {
  std::size_t total = 0;
  for (const auto &[year, index] : years_) total += index.doc_count();
  return total;
}

CorpusIndex BuildIndex(const Corpus &corpus, unsigned workers) {
  std::vector<YearIndex> built(corpus.shards.size());
  ParallelFor(corpus.shards.size(), workers,
              [&](std::size_t i) { built[i] = YearIndex(corpus.shards[i]); });
  std::map<int, YearIndex> years;
  for (YearIndex &index : built) {
    int year = index.year();
    if (!years.emplace(year, std::move(index)).second) {
      throw DataError("corpus has two shards for year " + std::to_string(year));
    }
  }
  return CorpusIndex(std::move(years));
}

std::string NormalizeTerm(std::string_view keyword) {
  std::vector<std::string> tokens = Tokenize(keyword);
  if (tokens.empty()) {
    throw UsageError("keyword '" + std::string(keyword) + "' contains no word characters");
  }
  if (tokens.size() > 1) {
    throw UsageError("keyword '" + std::string(keyword) +
                     "' spans several tokens; query the words separately with "
                     "cooccurrence or add it to a gazetteer");
  }
  return std::move(tokens.front());
}

std::size_t DocFrequency(const CorpusIndex &index, std::string_view term, int year) {
  const std::string token = NormalizeTerm(term);
  const YearIndex *y = index.Find(year);
  return y ? y->Lookup(token).size() : 0;
}

std::uint64_t TokenFrequency(const CorpusIndex &index, std::string_view term, int year) {
  const std::string token = NormalizeTerm(term);
  const YearIndex *y = index.Find(year);
  if (!y) return 0;
  std::uint64_t total = 0;
  for (const Posting &p : y->Lookup(token)) total += p.count;
  return total;
}

std::size_t IntersectCount(std::span<const Posting> a, std::span<const Posting> b) {
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].doc < b[j].doc) {
      ++i;
    } else if (b[j].doc < a[i].doc) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

std::size_t Cooccurrence(const CorpusIndex &index, std::string_view term_a,
                         std::string_view term_b, int year) {
  const std::string a = NormalizeTerm(term_a);
  const std::string b = NormalizeTerm(term_b);
  const YearIndex *y = index.Find(year);
  if (!y) return 0;
  return IntersectCount(y->Lookup(a), y->Lookup(b));
}

void WriteYearIndex(const YearIndex &index, std::ostream &out) {
  out << kIndexMagic << ' ' << kIndexFormatVersion << '\n'
      << "year " << index.year() << '\n'
      << "documents " << index.doc_count() << '\n'
      << "tokens " << index.token_total() << '\n';
  for (std::size_t i = 0; i < index.doc_count(); ++i) {
    out << "doc " << index.doc_ids()[i] << ' ' << index.doc_token_counts()[i] << '\n';
  }
  out << "terms " << index.postings().size() << '\n';
  for (const auto &[term, postings] : index.postings()) {
    out << term << ' ' << postings.size();
    std::uint32_t previous = 0;
    for (const Posting &p : postings) {
      out << ' ' << (p.doc - previous) << ':' << p.count;
      previous = p.doc;
    }
    out << '\n';
  }
}

namespace {

std::string ExpectLine(std::istream &in, std::string_view what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("index: unexpected end of file, expected " + std::string(what));
  }
  return line;
}

long long ExpectField(const std::string &line, std::string_view key) {
  std::string prefix = std::string(key) + ' ';
  if (line.rfind(prefix, 0) != 0) {
    throw DataError("index: expected '" + std::string(key) + "' line, got '" + line + "'");
  }
  auto value = ParseInteger(std::string_view(line).substr(prefix.size()));
  if (!value || *value < 0) throw DataError("index: bad value in '" + line + "'");
  return *value;
}

}  // namespace

YearIndex ReadYearIndex(std::istream &in) {
  const std::string magic = std::string(kIndexMagic) + ' ' +
                            std::to_string(kIndexFormatVersion);
  if (ExpectLine(in, "header") != magic) {
    throw DataError("index: unsupported header, expected '" + magic + "'");
  }
  YearIndex index;
  index.year_ = static_cast<int>(ExpectField(ExpectLine(in, "year"), "year"));
  const auto docs = ExpectField(ExpectLine(in, "documents"), "documents");
  index.token_total_ =
      static_cast<std::uint64_t>(ExpectField(ExpectLine(in, "tokens"), "tokens"));

  std::uint64_t summed = 0;
  for (long long i = 0; i < docs; ++i) {
    std::istringstream line(ExpectLine(in, "doc"));
    std::string key, doc_id;
    std::uint32_t count = 0;
    if (!(line >> key >> doc_id >> count) || key != "doc") {
      throw DataError("index: malformed doc line");
    }
    if (!index.doc_ids_.empty() && !(index.doc_ids_.back() < doc_id)) {
      throw DataError("index: doc ids out of order at " + doc_id);
    }
    index.doc_ids_.push_back(doc_id);
    index.doc_token_counts_.push_back(count);
    summed += count;
  }
  if (summed != index.token_total_) {
    throw DataError("index: per-document token counts do not sum to the total");
  }

  const auto terms = ExpectField(ExpectLine(in, "terms"), "terms");
  std::string previous_term;
  for (long long t = 0; t < terms; ++t) {
    std::istringstream line(ExpectLine(in, "term"));
    std::string term;
    std::size_t df = 0;
    if (!(line >> term >> df) || df == 0 || df > index.doc_ids_.size()) {
      throw DataError("index: malformed term line");
    }
    if (t > 0 && !(previous_term < term)) {
      throw DataError("index: terms out of order at " + term);
    }
    std::vector<Posting> postings;
    postings.reserve(df);
    std::uint64_t ordinal = 0;
    for (std::size_t k = 0; k < df; ++k) {
      std::string pair;
      if (!(line >> pair)) throw DataError("index: short posting list for " + term);
      auto colon = pair.find(':');
      auto gap = ParseInteger(std::string_view(pair).substr(0, colon));
      auto count = colon == std::string::npos
                       ? std::nullopt
                       : ParseInteger(std::string_view(pair).substr(colon + 1));
      if (!gap || !count || *count <= 0 || *gap < 0 || (k > 0 && *gap == 0)) {
        throw DataError("index: bad posting '" + pair + "' for " + term);
      }
      ordinal += static_cast<std::uint64_t>(*gap);
      if (ordinal >= index.doc_ids_.size()) {
        throw DataError("index: posting beyond document count for " + term);
      }
      postings.push_back({static_cast<std::uint32_t>(ordinal),
                          static_cast<std::uint32_t>(*count)});
    }
    previous_term = term;
    index.postings_.emplace(std::move(term), std::move(postings));
  }
  return index;
}

std::vector<fs::path> WriteIndex(const CorpusIndex &index, const fs::path &dir) {
  fs::create_directories(dir);
  std::vector<fs::path> written;
  for (const auto &[year, year_index] : index.years()) {
    fs::path path = dir / (std::to_string(year) + ".idx");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    WriteYearIndex(year_index, out);
    if (!out) throw DataError("cannot write " + path.string());
    written.push_back(std::move(path));
  }
  return written;
}

CorpusIndex ReadIndex(const fs::path &dir) {
  if (!fs::is_directory(dir)) throw DataError("index directory not found: " + dir.string());
  std::map<int, YearIndex> years;
  for (const fs::directory_entry &entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".idx") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    YearIndex y = ReadYearIndex(in);
    if (entry.path().stem() != std::to_string(y.year())) {
      throw DataError("index file " + entry.path().string() + " holds year " +
                      std::to_string(y.year()));
    }
    years.emplace(y.year(), std::move(y));
  }
  return CorpusIndex(std::move(years));
}

}  // namespace chronoscope
