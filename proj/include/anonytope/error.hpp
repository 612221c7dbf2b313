//
// Copyright 2026 The Anonytope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ANONYTOPE_ERROR_HPP_
#define ANONYTOPE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace anonytope {

enum class ErrorCode {
  kInput = 1,       // malformed or missing input data
  kInfeasible = 2,  // no generalization achieves the requested k
  kContract = 3,    // caller violated a precondition
  kSize = 4,        // construction would exceed the configured budget
  kFiltration = 5,  // filtration invariant broken (missing face, bad order)
};

// All failures raised by the core library. The C API maps `code()` onto its
// status values one-to-one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, const std::string& message) {
  if (!condition) Fail(ErrorCode::kContract, message);
}

}  // namespace anonytope

#endif  // ANONYTOPE_ERROR_HPP_
