// Copyright 2026 The freedom-rec Authors.
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

namespace freedom {

// Shapes of two operands do not conform.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An argument is outside the domain an operation accepts (negative entry, k < 1, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Input data violates a dataset precondition (too few interactions, unsatisfiable negatives).
struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed file on disk.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainingDiverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace freedom
