// include/slt/text/normalize.h
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

#ifndef SLT_TEXT_NORMALIZE_H_
#define SLT_TEXT_NORMALIZE_H_

#include <string>
#include <vector>

namespace slt {

// Text normalisation applied to every transcript, translation and hypothesis:
//  1. typographic quotes/dashes/ellipsis are mapped to ASCII (' " - ...);
//  2. ASCII and Latin-1 capitals are lowercased;
//  3. ASCII punctuation other than the apostrophe and hyphen becomes a
//     separate token;
//  4. whitespace runs collapse to one space, ends trimmed.
// The result is idempotent: Normalize(Normalize(s)) == Normalize(s).
std::string Normalize(const std::string &text);

/// Splits UTF-8 text into code points, each as its own UTF-8 string.
/// Invalid bytes become single-byte symbols.
std::vector<std::string> SplitUtf8(const std::string &text);

/// Splits on ASCII whitespace, dropping empty tokens.
std::vector<std::string> SplitWords(const std::string &text);

std::string JoinWords(const std::vector<std::string> &words);

}  // namespace slt

#endif  // SLT_TEXT_NORMALIZE_H_
