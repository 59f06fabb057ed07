// Copyright 2026 The Authors.
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

#ifndef FBQ_ERRORS_HPP_
#define FBQ_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fbq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sub-band sets of an assignment overlap.
class InvalidAssignmentError : public Error {
 public:
  using Error::Error;
};

// An allocation violates the per-user or total bit budget.
class InfeasibleAllocationError : public Error {
 public:
  using Error::Error;
};

// Requested bit count exceeds the supported range of an analytic model.
class BudgetTooLargeError : public Error {
 public:
  using Error::Error;
};

// Brute-force enumeration would exceed its guard.
class InstanceTooLargeError : public Error {
 public:
  using Error::Error;
};

// All water-filling thresholds are zero.
class DegenerateProblemError : public Error {
 public:
  using Error::Error;
};

// Bad configuration file, schema violation, or missing resource.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fbq

#endif  // FBQ_ERRORS_HPP_
