// Copyright 2026 The cryomux Authors
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

namespace cryomux {

// Base of every error thrown by the library. The CLI maps anything derived
// from this (other than config errors) to the "downstream" exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Division by a parameter that must be non-zero (e.g. dispersive shift).
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Malformed digital programming sequence for the multiplexer.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Operation not allowed in the current serial/parallel mode.
class ModeError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent configuration (step size, horizon, schema).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Master-equation integration lost trace or positivity.
class IntegratorError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cryomux
