// Copyright 2026 The cftomo Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace cftomo {

/// Bad user input: malformed state, schedule, grid or config. CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical self-check failed (truncation leak, aliasing, oracle defect).
/// CLI exit code 2.
class NumericalCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The readout protocol cannot encode information (sin(theta) == 0).
class ProtocolError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace cftomo
