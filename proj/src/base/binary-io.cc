// src/base/binary-io.cc
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

#include "slt/base/binary-io.h"

#include <bit>
#include <cstring>

#include "slt/base/error.h"

namespace slt {

void WriteU32(std::ostream &os, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  os.write(b, 4);
}

void WriteU16(std::ostream &os, std::uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  os.write(b, 2);
}

void WriteF32(std::ostream &os, float v) { WriteU32(os, std::bit_cast<std::uint32_t>(v)); }

void WriteString(std::ostream &os, const std::string &s) {
  WriteU32(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string ReadBytes(std::istream &is, std::size_t n, const char *what) {
  std::string s(n, '\0');
  if (n > 0 && !is.read(s.data(), static_cast<std::streamsize>(n)))
    throw FormatError(std::string("truncated input while reading ") + what);
  return s;
}

std::uint32_t ReadU32(std::istream &is, const char *what) {
  const std::string b = ReadBytes(is, 4, what);
  const auto *u = reinterpret_cast<const unsigned char *>(b.data());
  return static_cast<std::uint32_t>(u[0]) | (static_cast<std::uint32_t>(u[1]) << 8) |
         (static_cast<std::uint32_t>(u[2]) << 16) | (static_cast<std::uint32_t>(u[3]) << 24);
}

std::uint16_t ReadU16(std::istream &is, const char *what) {
  const std::string b = ReadBytes(is, 2, what);
  const auto *u = reinterpret_cast<const unsigned char *>(b.data());
  return static_cast<std::uint16_t>(u[0] | (u[1] << 8));
}

float ReadF32(std::istream &is, const char *what) {
  return std::bit_cast<float>(ReadU32(is, what));
}

std::string ReadString(std::istream &is, const char *what) {
  const std::uint32_t n = ReadU32(is, what);
  if (n > (1u << 24)) throw FormatError(std::string("implausible string length for ") + what);
  return ReadBytes(is, n, what);
}

}  // namespace slt
