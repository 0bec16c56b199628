// Copyright 2026 The ChiralWalk Authors
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

namespace chiralwalk {

// Invalid inputs (bad graphs, indices, parameters). CLI exit code 3.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical breakdown (factorization, integration, series domain). CLI exit code 4.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unreadable or malformed input files and option strings. CLI exit code 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SelfLoopError : DomainError {
    using DomainError::DomainError;
};
struct DuplicateEdgeError : DomainError {
    using DomainError::DomainError;
};
struct IndexOutOfRangeError : DomainError {
    using DomainError::DomainError;
};
struct InvalidParamsError : DomainError {
    using DomainError::DomainError;
};
struct InvalidBranchIndexError : DomainError {
    using DomainError::DomainError;
};
struct PhaseOnNonEdgeError : DomainError {
    using DomainError::DomainError;
};
struct SingleBranchError : DomainError {
    using DomainError::DomainError;
};
struct DimensionMismatchError : DomainError {
    using DomainError::DomainError;
};
struct TooLargeError : DomainError {
    using DomainError::DomainError;
};
struct NonMonotoneRangeError : DomainError {
    using DomainError::DomainError;
};
struct NonMonotoneTableError : DomainError {
    using DomainError::DomainError;
};
struct DegenerateTrialsError : DomainError {
    using DomainError::DomainError;
};

struct DecompositionFailureError : NumericError {
    using NumericError::NumericError;
};
struct ConvergenceDomainError : NumericError {
    using NumericError::NumericError;
};
struct IntegrationFailureError : NumericError {
    using NumericError::NumericError;
};

}  // namespace chiralwalk
