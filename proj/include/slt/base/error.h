// include/slt/base/error.h
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

#ifndef SLT_BASE_ERROR_H_
#define SLT_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace slt {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A computation produced NaN/Inf, or was handed non-finite input.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported file contents (WAV, feature cache, checkpoint).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration, flags or corpus layout.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Parameter transfer between checkpoints failed.
class TransferError : public Error {
 public:
  using Error::Error;
};

/// Process exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitNumeric = 3,
};

}  // namespace slt

#endif  // SLT_BASE_ERROR_H_
