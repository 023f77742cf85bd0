// Copyright 2026 The triwave Authors
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

#ifndef TRIWAVE_ERROR_HPP
#define TRIWAVE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace triwave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Block label (s, k) outside 0 <= k <= s.
class InvalidBlockIndex : public Error {
 public:
  using Error::Error;
};

/// Local coordinate outside [0, min(k, s-k)].
class InvalidLocalIndex : public Error {
 public:
  using Error::Error;
};

/// Physical parameter outside its domain, e.g. |chi| >= 1.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Numerical configuration outside its allowed range (tolerances, grids).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data handed to a numerical routine.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace triwave

#endif  // TRIWAVE_ERROR_HPP
