// Copyright 2026 The cayley-perc Authors.
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

namespace cperc {

// Bad argument value: out-of-range position, rank >= n!, negative rate, ...
class InputDomainError : public std::invalid_argument {
 public:
  explicit InputDomainError(const std::string& what) : std::invalid_argument(what) {}
};

// An edge list that does not describe a tree on [n], i.e. a transposition
// set that is not a minimal generating set of S_n.
class MinimalityError : public std::invalid_argument {
 public:
  explicit MinimalityError(const std::string& what) : std::invalid_argument(what) {}
};

// The request is well formed but exceeds a configured size cap or memory
// budget (exact metrics on n! vertices, percolation above the hard cap).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed command-line / configuration input.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace cperc
