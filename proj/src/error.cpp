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

#include "chronoscope/error.hpp"

#include <algorithm>
#include <cctype>

namespace chronoscope {

namespace {

std::string Fold(const std::string &s) {
  std::string out = s;
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::size_t EditDistance(const std::string &s, const std::string &t) {
  std::vector<std::size_t> prev(t.size() + 1);
  std::vector<std::size_t> curr(t.size() + 1);
  for (std::size_t j = 0; j <= t.size(); ++j) prev[j] = j;
  for (std::size_t i = 0; i < s.size(); ++i) {
    curr[0] = i + 1;
    for (std::size_t j = 0; j < t.size(); ++j) {
      std::size_t substitution = prev[j] + (s[i] == t[j] ? 0 : 1);
      curr[j + 1] = std::min({prev[j + 1] + 1, curr[j] + 1, substitution});
    }
    std::swap(prev, curr);
  }
  return prev[t.size()];
}

}  // namespace

std::vector<std::string> NearMatches(const std::string &query,
                                     const std::vector<std::string> &pool,
                                     std::size_t limit) {
  const std::string q = Fold(query);
  const std::size_t max_distance = std::max<std::size_t>(2, q.size() / 3);

  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const std::string &name : pool) {
    const std::string folded = Fold(name);
    std::size_t score;
    if (!q.empty() && (folded.find(q) != std::string::npos ||
                       q.find(folded) != std::string::npos)) {
      score = 0;
    } else {
      std::size_t d = EditDistance(q, folded);
      if (d > max_distance) continue;
      score = d;
    }
    scored.emplace_back(score, name);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> result;
  for (auto &[score, name] : scored) {
    if (result.size() == limit) break;
    result.push_back(std::move(name));
  }
  return result;
}

}  // namespace chronoscope
