/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The casched Authors. All rights reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace casched {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructor argument violates its documented range (e.g. a <= 0).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside its domain (negative rate, distance <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The loss threshold is below the reference loss, so no radius exists.
class NoCoverage : public Error {
 public:
  using Error::Error;
};

/// Every user is out of coverage of every carrier.
class EmptyScenario : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (malformed assignment,
/// non-stochastic share matrix).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The oracle solver hit its iteration cap. Carries the best iterate found.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, std::vector<double> best_phi,
                     double best_objective, double best_residual)
      : Error(what),
        best_phi(std::move(best_phi)),
        best_objective(best_objective),
        best_residual(best_residual) {}

  std::vector<double> best_phi;  // row-major [user x rb]
  double best_objective;
  double best_residual;
};

/// Malformed scenario text. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line(line) {}
  std::size_t line;
};

/// A scenario field failed validation. `field` is a JSON-path-like locator
/// such as `users[2].utility.r_max`.
class ValidationError : public InvalidParameter {
 public:
  ValidationError(const std::string& what, std::string field)
      : InvalidParameter(what), field(std::move(field)) {}
  std::string field;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace casched
