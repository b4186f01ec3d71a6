// Copyright 2026 The OttoForge Authors
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

namespace ottoforge {

/// Bad parameter passed to a builder (negative rate, non-Hermitian operator, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Time argument outside the stroke interval.
class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A density matrix left the physical set by more than the accepted tolerance.
class StateInvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Propagation accuracy insufficient (CPTP violation, clipped probabilities).
/// Usually cured by more substeps.
class IntegrationAccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoLimitCycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonUniqueLimitCycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Second-law or similar physical consistency check failed.
class ModelViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Step size too coarse for the stochastic integrator.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ottoforge
