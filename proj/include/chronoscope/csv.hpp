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

#ifndef CHRONOSCOPE_CSV_HPP_
#define CHRONOSCOPE_CSV_HPP_

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chronoscope {

// Streaming RFC-4180 reader. Accepts LF or CRLF record terminators, quoted
// fields with doubled-quote escapes and embedded line breaks. A leading UTF-8
// byte order mark is skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream &in, char delimiter = ',');

  // Reads the next record into `fields`. Returns false at end of input.
  // Throws DataError on an unterminated quoted field.
  bool Next(std::vector<std::string> &fields);

  // 1-based physical line number where the last returned record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream &in_;
  char delimiter_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
  bool first_ = true;
};

// Quotes `field` if it contains the delimiter, a quote or a line break.
std::string CsvEscape(std::string_view field, char delimiter = ',');

// Joins fields into one CSV record without the trailing newline.
std::string CsvJoin(const std::vector<std::string> &fields, char delimiter = ',');

// Strips ASCII whitespace at both ends.
std::string_view Trim(std::string_view s);

// Parses a base-10 integer occupying all of `s` (after trimming).
std::optional<long long> ParseInteger(std::string_view s);

// Parses a finite floating point number occupying all of `s` (after trimming).
std::optional<double> ParseNumber(std::string_view s);

// Shortest representation that parses back to the same double.
std::string FormatNumber(double value);

}  // namespace chronoscope

#endif  // CHRONOSCOPE_CSV_HPP_
