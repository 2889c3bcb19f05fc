// Copyright 2026 The ptree Authors.
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

#ifndef PTREE_ERRORS_HPP_
#define PTREE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ptree {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on shapes, indices, sizes or parameters was violated.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Malformed textual input (JSON, rational literals).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Exact elimination met a zero pivot where a nonsingular matrix was required.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// A NaN or infinity reached a floating computation.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A floating result failed its residual check (imaginary part or distance to
// the nearest integer).
class ResidualExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace ptree

#endif  // PTREE_ERRORS_HPP_
