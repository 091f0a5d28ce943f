// Copyright 2026 The DOGMa Fusion Authors
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

#ifndef DOGMA__ERROR_HPP_
#define DOGMA__ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dogma
{

enum class ErrorCode {
  TotalConflict,
  IndexOutOfRange,
  AlreadyInitialized,
  NoOverlap,
  DomainError,
  SingularMatrix,
  DegenerateCovariance,
  StaleReport,
  NegativeLatency,
  OutOfOrder,
  NotInitialized,
  NoPose,
  ConfigError,
  GeometryMismatch,
  ParseError,
  IoError,
};

const char * to_string(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace dogma

#endif  // DOGMA__ERROR_HPP_
