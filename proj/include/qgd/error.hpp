// Copyright 2026 The qgd Authors
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

namespace qgd {

/// Malformed input text, JSON or bitstrings.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A size guard or simulator capacity was exceeded.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arguments that violate an operation's preconditions.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace qgd
