// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The fdmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef FDMIMO_ERRORS_HPP
#define FDMIMO_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdmimo {

// Iterative factorization did not converge within its sweep cap.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Linear system too ill-conditioned to solve reliably (condition estimate > 1e12).
class NearSingularError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of the operation (e.g. non-PD matrix to log-det).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Caller violated a documented precondition (shape mismatch, non-diagonal input, ...).
class ContractError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A configuration whose statistics are all zero, e.g. an MSE with a zero denominator.
class DegenerateConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Fewer pilot symbols than users.
class InfeasiblePilotError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Parse or validation failure in a scenario configuration. `line` is 0 when the
// offending value did not come from a file line (defaults, --set overrides).
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

} // namespace fdmimo

#endif
