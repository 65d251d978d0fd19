// Copyright 2026 The careca Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace careca {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad value passed by the caller (ratio out of range, runs == 0, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Unresolvable or contradictory configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A record in a line-delimited file could not be turned into a valid value.
class LoadError : public Error {
 public:
  LoadError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

// Network failure that may succeed when retried.
class TransportError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public TransportError {
 public:
  using TransportError::TransportError;
};

// Provider gave up after exhausting its retries, or answered malformed data.
class ProviderError : public Error {
 public:
  using Error::Error;
};

// The irreducible part of a prompt does not fit the token budget.
class BudgetError : public Error {
 public:
  BudgetError(std::size_t budget, std::size_t required)
      : Error("prompt core needs " + std::to_string(required) +
              " tokens but budget is " + std::to_string(budget) +
              " (short by " + std::to_string(required - budget) + ")"),
        budget_(budget),
        required_(required) {}

  std::size_t budget() const noexcept { return budget_; }
  std::size_t required() const noexcept { return required_; }
  std::size_t shortfall() const noexcept { return required_ - budget_; }

 private:
  std::size_t budget_;
  std::size_t required_;
};

// Run results and item lists disagree.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace careca
