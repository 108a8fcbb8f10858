// Copyright 2026 The specmodes Authors
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

namespace specmodes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction parameters (bad bounds, non-positive widths, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a precondition (grid mismatch, wrong partition, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed its configured factorial budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An occupation state would exceed its photon-number truncation.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Not enough independent directions to build the requested basis.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A numerical result is degenerate or violates a checked invariant.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace specmodes
