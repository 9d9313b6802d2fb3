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

#ifndef CHRONOSCOPE_TOKENIZER_HPP_
#define CHRONOSCOPE_TOKENIZER_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace chronoscope {

// Word segmentation shared by the index, the sentiment counter and the
// gazetteer matcher.
//
// A token is a maximal run of letters and digits. A hyphen or apostrophe
// (ASCII or the common Unicode variants) stays inside a token when it sits
// between two word characters, so "e-mail" and "usa's" are single tokens
// while "-foo" and "rock--roll" are not joined. Input is decoded as UTF-8;
// non-ASCII code points count as word characters unless they fall in the
// punctuation, symbol or space blocks. Invalid UTF-8 bytes separate tokens.

// Tokens with their original case preserved.
std::vector<std::string> TokenizeSurface(std::string_view text);

// Tokens with ASCII letters lowercased. This is the index vocabulary.
std::vector<std::string> Tokenize(std::string_view text);

// Number of tokens Tokenize(text) would return.
std::size_t CountTokens(std::string_view text);

// ASCII lowercasing; other bytes pass through.
std::string FoldCase(std::string_view s);

}  // namespace chronoscope

#endif  // CHRONOSCOPE_TOKENIZER_HPP_
