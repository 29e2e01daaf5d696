// Copyright 2026 The mobcache Authors
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

#ifndef MOBCACHE_ERROR_H_
#define MOBCACHE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mobcache {

enum class ErrorCode {
  kInvalidParameter,
  kInvalidInput,
  kEmptyInput,
  kDimensionMismatch,
  kInstanceTooLarge,
  kDomain,
  kIo,
  // A self-check inside the library failed; indicates a bug, not bad input.
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mobcache

#endif  // MOBCACHE_ERROR_H_
