// Copyright 2026 The tailfit Authors.
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

#ifndef TAILFIT_ERROR_HPP_
#define TAILFIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tailfit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the support of a density or distribution function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid model or operation parameter (gamma <= 1, zero bins, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An operation would produce, or was given, a sample with no values.
class EmptySampleError : public Error {
 public:
  using Error::Error;
};

/// Sample carries no information for the requested fit (all values equal).
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

/// Not enough points for the requested estimate.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Numerical optimizer failed; message carries the diagnostics.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Unreadable input, malformed file, failed write.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tailfit

#endif  // TAILFIT_ERROR_HPP_
