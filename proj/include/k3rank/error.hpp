/* Copyright 2026 The k3rank Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef K3RANK_ERROR_HPP_
#define K3RANK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace k3rank {

// Numeric values are shared with the C API status codes in k3rank.h.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kParse = 2,
  kIo = 3,
  kLimit = 4,
  kBadReduction = 5,
  kDegenerate = 6,
  kInconsistent = 7,
  kInsufficientData = 8,
  kAmbiguous = 9,
  kUniqueness = 10,
  kGeometry = 11,
  kVerification = 12,
  kInternal = 13,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace k3rank

#endif  // K3RANK_ERROR_HPP_
