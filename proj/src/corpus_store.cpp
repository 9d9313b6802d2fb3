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

#include "chronoscope/corpus_store.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "chronoscope/csv.hpp"
#include "chronoscope/error.hpp"
#include "chronoscope/tokenizer.hpp"

namespace fs = std::filesystem;

namespace chronoscope {

namespace {

constexpr std::string_view kManifestHeader =
    "doc_id\tyear\tpath\ttoken_count\tauthors\tsubjects";

std::vector<std::string> SplitList(std::string_view cell) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= cell.size()) {
    std::size_t end = cell.find(';', start);
    if (end == std::string_view::npos) end = cell.size();
    std::string_view item = Trim(cell.substr(start, end - start));
    if (!item.empty()) items.emplace_back(item);
    start = end + 1;
  }
  return items;
}

// Manifest cells cannot hold tabs or line breaks.
std::string Flatten(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::string JoinList(const std::vector<std::string> &items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += "; ";
    out += Flatten(items[i]);
  }
  return out;
}

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find('\t', start);
    if (end == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

void PrepareRoot(const fs::path &root) {
  if (fs::exists(root)) {
    if (!fs::is_directory(root)) {
      throw UsageError("corpus root is not a directory: " + root.string());
    }
    if (!fs::is_empty(root)) {
      throw UsageError("corpus root is not empty: " + root.string());
    }
  }
  fs::create_directories(root);
}

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const fs::path &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("cannot write " + path.string());
}

}  // namespace

std::size_t Corpus::document_count() const {
  std::size_t n = 0;
  for (const YearShard &shard : shards) n += shard.documents.size();
  return n;
}

std::vector<int> Corpus::years() const {
  std::vector<int> result;
  result.reserve(shards.size());
  for (const YearShard &shard : shards) result.push_back(shard.year);
  return result;
}

std::optional<int> ExtractYear(std::string_view date) {
  for (std::size_t i = 0; i + 4 <= date.size(); ++i) {
    const auto is_digit = [&](std::size_t k) {
      return date[k] >= '0' && date[k] <= '9';
    };
    if (i > 0 && is_digit(i - 1)) continue;
    if (!(is_digit(i) && is_digit(i + 1) && is_digit(i + 2) && is_digit(i + 3))) {
      continue;
    }
    int year = (date[i] - '0') * 1000 + (date[i + 1] - '0') * 100 +
               (date[i + 2] - '0') * 10 + (date[i + 3] - '0');
    if (year >= kMinYear && year <= kMaxYear) return year;
  }
  return std::nullopt;
}

std::string MakeDocId(int year, std::size_t row, std::size_t width) {
  std::string digits = std::to_string(row);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::to_string(year) + "-" + digits;
}

Corpus MakeCorpus(std::vector<DocumentRecord> documents) {
  std::map<int, std::vector<DocumentRecord>> by_year;
  for (DocumentRecord &doc : documents) by_year[doc.year].push_back(std::move(doc));
  Corpus corpus;
  for (auto &[year, docs] : by_year) {
    std::sort(docs.begin(), docs.end(),
              [](const DocumentRecord &a, const DocumentRecord &b) {
                return a.doc_id < b.doc_id;
              });
    corpus.shards.push_back({year, std::move(docs)});
  }
  return corpus;
}

CorpusLayout WriteCorpus(const fs::path &root,
                         std::span<const DocumentRecord> documents) {
  std::unordered_set<std::string> seen;
  for (const DocumentRecord &doc : documents) {
    if (doc.doc_id.empty() ||
        doc.doc_id.find_first_of("/\\\t\n\r") != std::string::npos ||
        doc.doc_id == "." || doc.doc_id == "..") {
      throw DataError("invalid doc_id '" + doc.doc_id + "'");
    }
    if (!seen.insert(doc.doc_id).second) {
      throw DataError("duplicate doc_id " + doc.doc_id);
    }
    if (doc.year < kMinYear || doc.year > kMaxYear) {
      throw DataError("doc " + doc.doc_id + ": year " + std::to_string(doc.year) +
                      " out of range");
    }
    if (CountTokens(doc.body) == 0) {
      throw DataError("doc " + doc.doc_id + ": body has no tokens");
    }
  }

  PrepareRoot(root);
  CorpusLayout layout{root, {}};
  layout.entries.reserve(documents.size());
  std::set<int> shard_dirs;
  for (const DocumentRecord &doc : documents) {
    const std::string shard = std::to_string(doc.year);
    if (shard_dirs.insert(doc.year).second) fs::create_directories(root / shard);
    const std::string relative = shard + "/" + doc.doc_id + ".txt";
    WriteFile(root / shard / (doc.doc_id + ".txt"), doc.body);
    layout.entries.push_back({doc.doc_id, doc.year, relative,
                              CountTokens(doc.body), doc.authors, doc.subjects});
  }
  std::sort(layout.entries.begin(), layout.entries.end(),
            [](const ManifestEntry &a, const ManifestEntry &b) {
              return std::tie(a.year, a.doc_id) < std::tie(b.year, b.doc_id);
            });

  std::string manifest(kManifestHeader);
  manifest.push_back('\n');
  for (const ManifestEntry &e : layout.entries) {
    manifest += e.doc_id + '\t' + std::to_string(e.year) + '\t' + e.path + '\t' +
                std::to_string(e.token_count) + '\t' + JoinList(e.authors) +
                '\t' + JoinList(e.subjects) + '\n';
  }
  WriteFile(root / kManifestName, manifest);
  return layout;
}

IngestResult IngestCsv(std::istream &input, const ColumnMap &columns,
                       const fs::path &root) {
  CsvReader reader(input);
  std::vector<std::string> header;
  if (!reader.Next(header)) throw DataError("csv input has no header row");

  const auto column_index = [&](const std::string &name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (Trim(header[i]) == Trim(name)) return i;
    }
    throw UsageError("column '" + name + "' not found in csv header");
  };
  const std::size_t date_col = column_index(columns.date);
  const std::size_t body_col = column_index(columns.body);
  std::optional<std::size_t> authors_col;
  std::optional<std::size_t> subjects_col;
  if (columns.authors) authors_col = column_index(*columns.authors);
  if (columns.subjects) subjects_col = column_index(*columns.subjects);

  struct PendingRow {
    std::size_t row;
    DocumentRecord doc;
  };
  std::vector<PendingRow> pending;
  IngestReport report;
  std::vector<std::string> fields;
  while (reader.Next(fields)) {
    const std::size_t row = ++report.rows;
    const auto field = [&](std::optional<std::size_t> col) -> std::string {
      return col && *col < fields.size() ? fields[*col] : std::string();
    };
    std::optional<int> year = ExtractYear(field(date_col));
    std::string body = field(body_col);
    if (!year) {
      report.skipped_rows.push_back({row, "unparseable date"});
      continue;
    }
    if (CountTokens(body) == 0) {
      report.skipped_rows.push_back({row, "empty body"});
      continue;
    }
    DocumentRecord doc;
    doc.year = *year;
    doc.body = std::move(body);
    doc.authors = SplitList(field(authors_col));
    doc.subjects = SplitList(field(subjects_col));
    pending.push_back({row, std::move(doc)});
  }

  const std::size_t width =
      std::max<std::size_t>(6, std::to_string(report.rows).size());
  std::vector<DocumentRecord> documents;
  documents.reserve(pending.size());
  for (PendingRow &p : pending) {
    p.doc.doc_id = MakeDocId(p.doc.year, p.row, width);
    documents.push_back(std::move(p.doc));
  }

  IngestResult result;
  result.layout = WriteCorpus(root, documents);
  report.documents = result.layout.entries.size();
  report.skipped = report.skipped_rows.size();
  for (const ManifestEntry &e : result.layout.entries) report.tokens += e.token_count;
  result.report = std::move(report);
  return result;
}

CorpusLayout ReadManifest(const fs::path &root) {
  const fs::path manifest_path = root / kManifestName;
  if (!fs::exists(manifest_path)) {
    throw DataError("manifest not found: " + manifest_path.string());
  }
  std::istringstream in(ReadFile(manifest_path));
  std::string line;
  if (!std::getline(in, line) || line != kManifestHeader) {
    throw DataError("manifest has an unexpected header: " + manifest_path.string());
  }

  CorpusLayout layout{root, {}};
  std::unordered_set<std::string> seen;
  std::vector<std::string> missing;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where =
        manifest_path.string() + ":" + std::to_string(line_no) + ": ";
    std::vector<std::string> f = SplitTabs(line);
    if (f.size() != 6) throw DataError(where + "expected 6 tab-separated fields");
    ManifestEntry entry;
    entry.doc_id = f[0];
    auto year = ParseInteger(f[1]);
    auto tokens = ParseInteger(f[3]);
    if (!year || *year < kMinYear || *year > kMaxYear) {
      throw DataError(where + "bad year '" + f[1] + "'");
    }
    if (!tokens || *tokens < 0) throw DataError(where + "bad token count '" + f[3] + "'");
    entry.year = static_cast<int>(*year);
    entry.path = f[2];
    entry.token_count = static_cast<std::size_t>(*tokens);
    entry.authors = SplitList(f[4]);
    entry.subjects = SplitList(f[5]);

    if (!seen.insert(entry.doc_id).second) {
      throw DataError(where + "duplicate doc_id " + entry.doc_id);
    }
    fs::path relative(entry.path);
    if (relative.is_absolute() || relative.parent_path() != fs::path(f[1])) {
      throw DataError(where + "path '" + entry.path + "' is not inside shard " + f[1]);
    }
    if (!fs::is_regular_file(root / relative)) {
      missing.push_back((root / relative).string());
    }
    layout.entries.push_back(std::move(entry));
  }
  if (!missing.empty()) {
    std::string message = "manifest lists missing files:";
    for (const std::string &m : missing) message += "\n  " + m;
    throw DataError(message);
  }
  std::sort(layout.entries.begin(), layout.entries.end(),
            [](const ManifestEntry &a, const ManifestEntry &b) {
              return std::tie(a.year, a.doc_id) < std::tie(b.year, b.doc_id);
            });
  return layout;
}

Corpus LoadCorpus(const fs::path &root) {
  CorpusLayout layout = ReadManifest(root);
  Corpus corpus;
  for (ManifestEntry &entry : layout.entries) {
    DocumentRecord doc;
    doc.doc_id = std::move(entry.doc_id);
    doc.year = entry.year;
    doc.authors = std::move(entry.authors);
    doc.subjects = std::move(entry.subjects);
    doc.body = ReadFile(root / entry.path);
    if (CountTokens(doc.body) != entry.token_count) {
      throw DataError("token count mismatch for " + (root / entry.path).string() +
                      ": manifest says " + std::to_string(entry.token_count));
    }
    if (corpus.shards.empty() || corpus.shards.back().year != doc.year) {
      corpus.shards.push_back({doc.year, {}});
    }
    corpus.shards.back().documents.push_back(std::move(doc));
  }
  return corpus;
}

std::vector<DocumentRecord> SynthesizeDocuments(const SyntheticOptions &options) {
  if (options.vocabulary.empty()) {
    throw UsageError("synthetic corpus needs a non-empty vocabulary");
  }
  for (const std::string &word : options.vocabulary) {
    if (CountTokens(word) == 0) {
      throw UsageError("vocabulary entry '" + word + "' contains no tokens");
    }
  }
  if (options.first_year < kMinYear || options.last_year > kMaxYear ||
      options.first_year > options.last_year) {
    throw UsageError("synthetic year range must lie within [1000, 9999] and be ordered");
  }
  if (options.min_words == 0 || options.min_words > options.max_words) {
    throw UsageError("synthetic document length range is empty");
  }

  static constexpr std::string_view kSubjects[] = {
      "Strategy", "Leadership", "Finance", "Marketing", "Operations",
      "Technology", "Economics", "Organizational behavior"};
  static constexpr std::string_view kPunctuation[] = {",", ".", ";", "?"};

  // std::mt19937_64 output is fully specified; reducing with modulo keeps
  // the corpus identical across standard library implementations.
  std::mt19937_64 rng(options.seed);
  const auto draw = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  std::vector<DocumentRecord> documents;
  for (int year = options.first_year; year <= options.last_year; ++year) {
    for (std::size_t i = 0; i < options.docs_per_year; ++i) {
      DocumentRecord doc;
      doc.doc_id = MakeDocId(year, i + 1);
      doc.year = year;
      const std::size_t authors = 1 + draw(3);
      for (std::size_t a = 0; a < authors; ++a) {
        doc.authors.push_back("Author " + std::to_string(1 + draw(200)));
      }
      doc.subjects.emplace_back(kSubjects[draw(std::size(kSubjects))]);

      const std::size_t words =
          options.min_words + draw(options.max_words - options.min_words + 1);
      for (std::size_t w = 0; w < words; ++w) {
        if (w > 0) doc.body.push_back(' ');
        doc.body += options.vocabulary[draw(options.vocabulary.size())];
        if (draw(8) == 0) doc.body += kPunctuation[draw(std::size(kPunctuation))];
      }
      documents.push_back(std::move(doc));
    }
  }
  return documents;
}

CorpusLayout GenerateSynthetic(const SyntheticOptions &options, const fs::path &root) {
  std::vector<DocumentRecord> documents = SynthesizeDocuments(options);
  return WriteCorpus(root, documents);
}

}  // namespace chronoscope
