// Copyright 2026 The qblock authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qblock {

/// Violation of a mathematical precondition (spectrum not enclosed, singular
/// shifted matrix, branch cut inside the disk, eigenvalue inside the gap, ...).
/// The CLI maps this family to exit code 3.
class precondition_error : public std::domain_error {
  public:
    explicit precondition_error(const std::string& what) : std::domain_error(what) {}
};

/// Bad user input outside the math itself (unreadable file, malformed JSON,
/// inconsistent flags). The CLI maps this family to exit code 2.
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qblock
