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

#ifndef CHRONOSCOPE_TEXT_INDEX_HPP_
#define CHRONOSCOPE_TEXT_INDEX_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chronoscope/corpus_store.hpp"

namespace chronoscope {

// A posting: document ordinal within its year and the term's occurrence
// count in that document.
struct Posting {
  std::uint32_t doc = 0;
  std::uint32_t count = 0;

  bool operator==(const Posting &) const = default;
};

// Inverted index over the documents of one year. Document ordinals index
// doc_ids(), which is sorted, so postings sorted by ordinal are also sorted
// by doc_id.
class YearIndex {
 public:
  using PostingMap = std::map<std::string, std::vector<Posting>, std::less<>>;

  YearIndex() = default;
  explicit YearIndex(const YearShard &shard);

  int year() const { return year_; }
  std::size_t doc_count() const { return doc_ids_.size(); }
  std::uint64_t token_total() const { return token_total_; }
  const std::vector<std::string> &doc_ids() const { return doc_ids_; }
  const std::vector<std::uint32_t> &doc_token_counts() const { return doc_token_counts_; }
  const PostingMap &postings() const { return postings_; }

  // Empty span for unknown terms.
  std::span<const Posting> Lookup(std::string_view term) const;

  bool operator==(const YearIndex &) const = default;

 private:
  friend YearIndex ReadYearIndex(std::istream &in);

  int year_ = 0;
  std::vector<std::string> doc_ids_;
  std::vector<std::uint32_t> doc_token_counts_;
  std::uint64_t token_total_ = 0;
  PostingMap postings_;
};

// Per-year indexes for a whole corpus. Immutable once built.
class CorpusIndex {
 public:
  CorpusIndex() = default;
  explicit CorpusIndex(std::map<int, YearIndex> years) : years_(std::move(years)) {}

  const std::map<int, YearIndex> &years() const { return years_; }
  bool empty() const { return years_.empty(); }
  // nullptr if the corpus has no documents in `year`.
  const YearIndex *Find(int year) const;
  std::uint64_t token_total() const;
  std::size_t doc_count() const;

  bool operator==(const CorpusIndex &) const = default;

 private:
  std::map<int, YearIndex> years_;
};

// Builds one YearIndex per shard. Shards are spread over `workers` threads;
// the result does not depend on the worker count.
CorpusIndex BuildIndex(const Corpus &corpus, unsigned workers = 1);

// Normalizes a keyword to its single index token. Throws UsageError when
// the keyword yields no token or more than one (multi-word queries belong
// to Cooccurrence or the gazetteer).
std::string NormalizeTerm(std::string_view keyword);

// Number of documents in `year` containing `term` at least once.
std::size_t DocFrequency(const CorpusIndex &index, std::string_view term, int year);

// Total occurrences of `term` in `year`.
std::uint64_t TokenFrequency(const CorpusIndex &index, std::string_view term, int year);

// Number of documents in `year` containing both terms anywhere in the
// document (whole-document window). Sorted postings intersection.
std::size_t Cooccurrence(const CorpusIndex &index, std::string_view term_a,
                         std::string_view term_b, int year);

// Number of common documents between two sorted posting lists.
std::size_t IntersectCount(std::span<const Posting> a, std::span<const Posting> b);

// Serialized index, one text file per year:
//
//   chronoscope-index 1
//   year <year>
//   documents <n>
//   tokens <token_total>
//   doc <doc_id> <token_count>        (n lines, ordinal order)
//   terms <m>
//   <term> <df> <gap>:<count> ...     (m lines, terms in byte order)
//
// The first gap is the first ordinal; later gaps are differences between
// consecutive ordinals. Lines end with '\n'.
inline constexpr std::string_view kIndexMagic = "chronoscope-index";
inline constexpr int kIndexFormatVersion = 1;

void WriteYearIndex(const YearIndex &index, std::ostream &out);
YearIndex ReadYearIndex(std::istream &in);

// Writes <dir>/<year>.idx for every year. Returns the paths written.
std::vector<std::filesystem::path> WriteIndex(const CorpusIndex &index,
                                              const std::filesystem::path &dir);
CorpusIndex ReadIndex(const std::filesystem::path &dir);

}  // namespace chronoscope

#endif  // CHRONOSCOPE_TEXT_INDEX_HPP_
