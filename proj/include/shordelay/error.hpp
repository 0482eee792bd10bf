// Copyright 2026 The shordelay Authors
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

namespace shordelay {

/// Bad input: violated precondition, malformed parameter, size mismatch.
class InvalidArgument : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// The request was well formed but the computation cannot proceed,
/// e.g. forcing an auxiliary outcome that has zero probability.
class ComputationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Requested state vector exceeds the simulator's capacity.
class SizeLimitExceeded : public ComputationError {
   public:
    using ComputationError::ComputationError;
};

}  // namespace shordelay
