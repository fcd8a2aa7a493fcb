// Copyright 2026 The rudd Authors
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

namespace rudd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iterative method did not reach its tolerance. `best_estimate` and
/// `achieved` describe the last iterate so callers can still report it.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double achieved)
      : Error(what), best_estimate_(best_estimate), achieved_(achieved) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double achieved() const noexcept { return achieved_; }

 private:
  double best_estimate_;
  double achieved_;
};

}  // namespace rudd
