// Copyright 2026 The qotm developers
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

namespace qotm {

// Raised by WrapInstance when the query budget is spent. Distinct from a
// reject verdict: exhaustion is a resource event, not a key mismatch.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by IdealOTM on any execute after the first.
class AlreadyConsumedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the SDP feasibility checker; the message names the violated
// constraint.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qotm
