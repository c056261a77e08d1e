// Copyright 2026 The cgplan Authors
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

#ifndef CGPLAN_ERRORS_HPP_
#define CGPLAN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cgplan {

// Malformed input, violated precondition, or unusable parameters. The CLI
// reports these with exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant (failed certificate, exceeded iteration cap,
// singular system on valid input). The CLI reports these with exit code 3.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define CGPLAN_CHECK(cond, msg)                                           \
  do {                                                                    \
    if (!(cond)) {                                                        \
      throw ::cgplan::InternalError(std::string(__FILE__) + ":" +         \
                                    std::to_string(__LINE__) + ": " +     \
                                    (msg));                               \
    }                                                                     \
  } while (false)

}  // namespace cgplan

#endif  // CGPLAN_ERRORS_HPP_
