// Copyright 2026 The pptlab Authors
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

namespace pptlab {

/// Caller broke a documented precondition (shape, Hermiticity, parameter range).
class ContractViolation : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Input is well formed but outside the mathematical domain of the operation,
/// e.g. pseudo-inverse of a matrix with a significantly negative eigenvalue.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A numerical procedure could not reach a trustworthy answer: rank
/// staircases that do not add up, span deficiencies, stalled searches.
class NumericalDegeneracy : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed state file or CLI input.
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace pptlab
