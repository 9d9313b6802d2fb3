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

#include "chronoscope/tokenizer.hpp"

#include <cstdint>

namespace chronoscope {

namespace {

enum class CharClass { kSeparator, kWord, kConnector };

struct Decoded {
  char32_t code;
  std::size_t length;  // bytes consumed; invalid sequences consume one byte
  bool valid;
};

Decoded DecodeUtf8(std::string_view s, std::size_t pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<std::uint8_t>(s[pos + i]);
  };
  const std::uint8_t lead = byte(0);
  if (lead < 0x80) return {lead, 1, true};

  std::size_t length;
  char32_t code;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    code = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    code = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    code = lead & 0x07;
  } else {
    return {0xFFFD, 1, false};
  }
  if (pos + length > s.size()) return {0xFFFD, 1, false};
  for (std::size_t i = 1; i < length; ++i) {
    if ((byte(i) & 0xC0) != 0x80) return {0xFFFD, 1, false};
    code = (code << 6) | (byte(i) & 0x3F);
  }
  // Reject overlong forms and surrogates.
  static constexpr char32_t kMinimum[] = {0, 0, 0x80, 0x800, 0x10000};
  if (code < kMinimum[length] || code > 0x10FFFF ||
      (code >= 0xD800 && code <= 0xDFFF)) {
    return {0xFFFD, 1, false};
  }
  return {code, length, true};
}

CharClass Classify(char32_t c) {
  if (c < 0x80) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
        (c >= '0' && c <= '9')) {
      return CharClass::kWord;
    }
    if (c == '-' || c == '\'') return CharClass::kConnector;
    return CharClass::kSeparator;
  }
  // Hyphen, non-breaking hyphen, right single quotation mark.
  if (c == 0x2010 || c == 0x2011 || c == 0x2019) return CharClass::kConnector;
  if (c == 0xAA || c == 0xB5 || c == 0xBA) return CharClass::kWord;
  if (c <= 0xBF || c == 0xD7 || c == 0xF7) return CharClass::kSeparator;
  if ((c >= 0x2000 && c <= 0x2BFF) ||    // punctuation, symbols, arrows, math
      (c >= 0x3000 && c <= 0x303F) ||    // CJK punctuation
      (c >= 0xFE30 && c <= 0xFE4F) ||    // CJK compatibility forms
      (c >= 0xFF00 && c <= 0xFF0F) ||    // fullwidth punctuation
      (c >= 0xFF1A && c <= 0xFF20) || (c >= 0xFF3B && c <= 0xFF40) ||
      (c >= 0xFF5B && c <= 0xFF65) || (c >= 0xFFF0 && c <= 0xFFFF) ||
      (c >= 0x1F000 && c <= 0x1FAFF)) {  // emoji and pictographs
    return CharClass::kSeparator;
  }
  return CharClass::kWord;
}

// Calls `emit(begin, end)` for the byte range of every token in `text`.
template <typename Emit>
void Segment(std::string_view text, Emit &&emit) {
  std::size_t pos = 0;
  std::size_t token_begin = 0;
  std::size_t token_end = 0;  // end of the last word character in the token
  bool in_token = false;
  // A single connector follows the last word character.
  bool pending_connector = false;

  while (pos < text.size()) {
    Decoded d = DecodeUtf8(text, pos);
    CharClass cls = d.valid ? Classify(d.code) : CharClass::kSeparator;
    if (cls == CharClass::kWord) {
      if (!in_token) {
        in_token = true;
        token_begin = pos;
      }
      pending_connector = false;
      token_end = pos + d.length;
    } else if (cls == CharClass::kConnector && in_token && !pending_connector) {
      pending_connector = true;
    } else if (in_token) {
      emit(token_begin, token_end);
      in_token = false;
      pending_connector = false;
    }
    pos += d.length;
  }
  if (in_token) emit(token_begin, token_end);
}

}  // namespace

std::string FoldCase(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> TokenizeSurface(std::string_view text) {
  std::vector<std::string> tokens;
  Segment(text, [&](std::size_t begin, std::size_t end) {
    tokens.emplace_back(text.substr(begin, end - begin));
  });
  return tokens;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  Segment(text, [&](std::size_t begin, std::size_t end) {
    tokens.push_back(FoldCase(text.substr(begin, end - begin)));
  });
  return tokens;
}

std::size_t CountTokens(std::string_view text) {
  std::size_t count = 0;
  Segment(text, [&](std::size_t, std::size_t) { ++count; });
  return count;
}

}  // namespace chronoscope
