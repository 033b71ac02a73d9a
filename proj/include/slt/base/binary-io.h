// include/slt/base/binary-io.h
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

#ifndef SLT_BASE_BINARY_IO_H_
#define SLT_BASE_BINARY_IO_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

namespace slt {

// Explicit little-endian encoding, independent of host byte order.

void WriteU32(std::ostream &os, std::uint32_t v);
void WriteU16(std::ostream &os, std::uint16_t v);
void WriteF32(std::ostream &os, float v);
/// u32 byte length followed by the raw bytes.
void WriteString(std::ostream &os, const std::string &s);

// Readers throw FormatError on a short read; `what` names the field.
std::uint32_t ReadU32(std::istream &is, const char *what);
std::uint16_t ReadU16(std::istream &is, const char *what);
float ReadF32(std::istream &is, const char *what);
std::string ReadString(std::istream &is, const char *what);
/// Reads exactly n bytes.
std::string ReadBytes(std::istream &is, std::size_t n, const char *what);

}  // namespace slt

#endif  // SLT_BASE_BINARY_IO_H_
