// Copyright 2026 The ec3lab Authors
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

namespace ec3lab {

/// Malformed instance document or command-line value.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A well-formed value that violates a domain invariant.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds a size cap (dense matrices, brute-force enumeration).
struct CapExceeded : std::length_error {
    using std::length_error::length_error;
};

/// Eigensolver failure or drift beyond a numerical tolerance.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ec3lab
