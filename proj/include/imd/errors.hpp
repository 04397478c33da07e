// Copyright 2026 The IMD Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IMD_ERRORS_HPP
#define IMD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace imd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasiblePointError : public Error {
 public:
  using Error::Error;
};

class NonpositiveBetaError : public Error {
 public:
  explicit NonpositiveBetaError(double beta)
      : Error("beta must be positive, got " + std::to_string(beta)) {}
};

class ScheduleExhaustedError : public Error {
 public:
  using Error::Error;
};

class GeometryMismatchError : public Error {
 public:
  using Error::Error;
};

class UnknownKindError : public Error {
 public:
  using Error::Error;
};

class InsufficientGridError : public Error {
 public:
  using Error::Error;
};

/// Integration produced a NaN or infinity; `time()` is where it was detected.
class NonfiniteStateError : public Error {
 public:
  explicit NonfiniteStateError(double t)
      : Error("non-finite state at t = " + std::to_string(t)), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace imd

#endif  // IMD_ERRORS_HPP
