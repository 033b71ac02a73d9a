// src/text/normalize.cc
//
// Copyright 2026  The slt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "slt/text/normalize.h"

#include <cstring>

namespace slt {

namespace {

// Length of the UTF-8 sequence starting at s[i], or 0 if invalid.
std::size_t Utf8Length(const std::string &s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  if (c < 0x80) return 1;
  if ((c & 0xe0) == 0xc0) len = 2;
  else if ((c & 0xf0) == 0xe0) len = 3;
  else if ((c & 0xf8) == 0xf0) len = 4;
  else return 0;
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k)
    if ((static_cast<unsigned char>(s[i + k]) & 0xc0) != 0x80) return 0;
  return len;
}

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool IsSplitPunct(char c) {
  return std::strchr("!\"#$%&()*+,./:;<=>?@[\\]^_`{|}~", c) != nullptr && c != '\0';
}

std::string MapSymbol(const std::string &sym) {
  if (sym.size() == 1) {
    const char c = sym[0];
    if (c >= 'A' && c <= 'Z') return std::string(1, static_cast<char>(c - 'A' + 'a'));
    return sym;
  }
  if (sym == "‘" || sym == "’") return "'";
  if (sym == "“" || sym == "”" || sym == "«" || sym == "»") return "\"";
  if (sym == "–" || sym == "—") return "-";
  if (sym == "…") return "...";
  if (sym == "\u00a0") return " ";
  // Latin-1 capitals U+00C0..U+00DE (except U+00D7) are two-byte sequences
  // C3 80..C3 9E; lowercase is +0x20 on the second byte.
  if (sym.size() == 2 && static_cast<unsigned char>(sym[0]) == 0xc3) {
    const auto b = static_cast<unsigned char>(sym[1]);
    if (b >= 0x80 && b <= 0x9e && b != 0x97) {
      std::string lower = sym;
      lower[1] = static_cast<char>(b + 0x20);
      return lower;
    }
  }
  return sym;
}

}  // namespace

std::vector<std::string> SplitUtf8(const std::string &text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size();) {
    std::size_t len = Utf8Length(text, i);
    if (len == 0) len = 1;
    out.push_back(text.substr(i, len));
    i += len;
  }
  return out;
}

std::string Normalize(const std::string &text) {
  std::string spaced;
  for (const std::string &sym : SplitUtf8(text)) {
    const std::string mapped = MapSymbol(sym);
    if (mapped.size() == 1 && IsSplitPunct(mapped[0])) {
      spaced += ' ';
      spaced += mapped;
      spaced += ' ';
    } else if (mapped == "...") {
      spaced += " . . . ";
    } else {
      spaced += mapped;
    }
  }
  std::string out;
  bool pending_space = false;
  for (char c : spaced) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::vector<std::string> SplitWords(const std::string &text) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : text) {
    if (IsSpace(c)) {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

std::string JoinWords(const std::vector<std::string> &words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

}  // namespace slt
