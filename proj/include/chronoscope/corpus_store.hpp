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

#ifndef CHRONOSCOPE_CORPUS_STORE_HPP_
#define CHRONOSCOPE_CORPUS_STORE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chronoscope {

inline constexpr int kMinYear = 1000;
inline constexpr int kMaxYear = 9999;

// One dated document (an abstract in the original collection).
struct DocumentRecord {
  std::string doc_id;
  int year = 0;
  std::vector<std::string> authors;
  std::vector<std::string> subjects;
  std::string body;

  bool operator==(const DocumentRecord &) const = default;
};

// All documents of one year, sorted by doc_id.
struct YearShard {
  int year = 0;
  std::vector<DocumentRecord> documents;
};

// An in-memory corpus: shards in ascending year order.
struct Corpus {
  std::vector<YearShard> shards;

  std::size_t document_count() const;
  std::vector<int> years() const;
};

// A manifest row. `path` is relative to the corpus root.
struct ManifestEntry {
  std::string doc_id;
  int year = 0;
  std::string path;
  std::size_t token_count = 0;
  std::vector<std::string> authors;
  std::vector<std::string> subjects;
};

// On-disk corpus: <root>/<year>/<doc_id>.txt holding the UTF-8 body, and
// <root>/manifest.tsv with one tab-separated row per document:
//
//   doc_id  year  path  token_count  authors  subjects
//
// authors and subjects are joined with "; ". Rows are sorted by year, then
// doc_id.
struct CorpusLayout {
  std::filesystem::path root;
  std::vector<ManifestEntry> entries;
};

inline constexpr std::string_view kManifestName = "manifest.tsv";

// Header names for the CSV columns that feed a DocumentRecord.
struct ColumnMap {
  std::string date;
  std::string body;
  std::optional<std::string> authors;
  std::optional<std::string> subjects;
};

struct SkippedRow {
  std::size_t row = 0;  // 1-based data row, header excluded
  std::string reason;
};

struct IngestReport {
  std::size_t rows = 0;
  std::size_t documents = 0;
  std::size_t tokens = 0;
  std::size_t skipped = 0;
  std::vector<SkippedRow> skipped_rows;
};

struct IngestResult {
  CorpusLayout layout;
  IngestReport report;
};

// Reads a CSV export with a header row and writes a year-sharded corpus under
// `root`, which must not exist or be empty. Rows whose date has no year or
// whose body has no tokens are skipped and listed in the report. A column
// named in `columns` but absent from the header is a UsageError.
//
// doc_ids are "<year>-<row>" with the 1-based data row zero-padded to at
// least six digits, e.g. 1992-000041.
IngestResult IngestCsv(std::istream &input, const ColumnMap &columns,
                       const std::filesystem::path &root);

// Writes `documents` as a corpus under `root` (must not exist or be empty).
// Throws DataError if a record violates the DocumentRecord invariants.
CorpusLayout WriteCorpus(const std::filesystem::path &root,
                         std::span<const DocumentRecord> documents);

// Parses and validates <root>/manifest.tsv. Every entry must point at an
// existing file inside the shard named by its year.
CorpusLayout ReadManifest(const std::filesystem::path &root);

// Loads every document listed in the manifest, grouped by year.
Corpus LoadCorpus(const std::filesystem::path &root);

// Groups records by year and sorts them the way LoadCorpus does.
Corpus MakeCorpus(std::vector<DocumentRecord> documents);

// First 4-digit run in `date` that forms a year in [kMinYear, kMaxYear].
std::optional<int> ExtractYear(std::string_view date);

std::string MakeDocId(int year, std::size_t row, std::size_t width = 6);

struct SyntheticOptions {
  std::uint64_t seed = 0;
  int first_year = 1990;
  int last_year = 1990;
  std::size_t docs_per_year = 0;
  // Entries may be phrases; each must contain at least one token.
  std::vector<std::string> vocabulary;
  std::size_t min_words = 5;
  std::size_t max_words = 40;
};

// Deterministic pseudo-random documents. Same options, same output.
std::vector<DocumentRecord> SynthesizeDocuments(const SyntheticOptions &options);

// SynthesizeDocuments followed by WriteCorpus.
CorpusLayout GenerateSynthetic(const SyntheticOptions &options,
                               const std::filesystem::path &root);

}  // namespace chronoscope

#endif  // CHRONOSCOPE_CORPUS_STORE_HPP_
