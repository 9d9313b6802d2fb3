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

#ifndef CHRONOSCOPE_ERROR_HPP_
#define CHRONOSCOPE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chronoscope {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The caller asked for something malformed: bad flag values, multi-token
// keywords, inverted year ranges. Maps to HTTP 400 and CLI exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input data is broken: missing files, malformed manifests, conflicting
// lexicon entries. Maps to HTTP 500 and CLI exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

// A named thing (entity, group, region, external series) does not exist.
// Carries near matches so callers can suggest alternatives.
class NotFoundError : public Error {
 public:
  NotFoundError(const std::string &message, std::vector<std::string> candidates)
      : Error(message), candidates_(std::move(candidates)) {}

  const std::vector<std::string> &candidates() const { return candidates_; }

 private:
  std::vector<std::string> candidates_;
};

// Returns up to `limit` names from `pool` that look like `query`: case-folded
// substring hits first, then small edit distances.
std::vector<std::string> NearMatches(const std::string &query,
                                     const std::vector<std::string> &pool,
                                     std::size_t limit = 5);

}  // namespace chronoscope

#endif  // CHRONOSCOPE_ERROR_HPP_
