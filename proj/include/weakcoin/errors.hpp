// Copyright 2026 The weakcoin authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file errors.hpp
 * Exception hierarchy shared by every module.
 *
 * All failures raised by the library derive from weakcoin::Error, which
 * carries a coarse ErrorKind so the C wrapper and the command-line tool can
 * map them onto stable status/exit codes without string matching.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace weakcoin {

/// Coarse failure classes, aligned with the process exit codes used by the
/// command-line tool (0 success, 2 input/validation, 3 certification or
/// constraint failure, 4 size limit).
enum class ErrorKind {
    validation = 2,  ///< malformed input, bad argument, parse failure
    constraint = 3,  ///< a checked equality/inequality does not hold
    size = 4,        ///< request exceeds a configured size limit
    internal = 5,    ///< unexpected condition inside the library
};

/// Base class for all library exceptions.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// An argument lies outside its mathematical domain (e.g. a coin value
/// outside [0,1], a curve abscissa outside [0,1]).
class DomainError : public Error {
  public:
    explicit DomainError(const std::string &message)
        : Error(ErrorKind::validation, message) {}
};

/// A requested tree depth is invalid (non-positive, or inconsistent with the
/// node array supplied).
class DepthError : public Error {
  public:
    explicit DepthError(const std::string &message)
        : Error(ErrorKind::validation, message) {}
};

/// An operation that requires a round count of specific parity was invoked
/// with the wrong parity.
class ParityError : public Error {
  public:
    explicit ParityError(const std::string &message)
        : Error(ErrorKind::validation, message) {}
};

/// The game never lets one of the parties win, so cheat probabilities are
/// not defined (the honest win probability is exactly 0 or 1).
class DegenerateGame : public Error {
  public:
    explicit DegenerateGame(const std::string &message)
        : Error(ErrorKind::validation, message) {}
};

/// The request exceeds a configured size limit (simulation depth, dense
/// matrix dimension, materialized tree size).
class SizeError : public Error {
  public:
    explicit SizeError(const std::string &message)
        : Error(ErrorKind::size, message) {}
};

/// A message schedule is malformed (wrong length, value outside [0,1]).
class ScheduleError : public Error {
  public:
    explicit ScheduleError(const std::string &message)
        : Error(ErrorKind::validation, message) {}
};

/// A protocol step descriptor is malformed (unknown kind, round index out of
/// range, wrong side for the round).
class StepError : public Error {
  public:
    explicit StepError(const std::string &message)
        : Error(ErrorKind::validation, message) {}
};

/// A protocol step was applied out of order in strict mode.
class StepOrderError : public Error {
  public:
    explicit StepOrderError(const std::string &message)
        : Error(ErrorKind::validation, message) {}
};

/// A checked constraint (strategy equation, certificate inequality,
/// conserved sum) fails beyond the requested tolerance. The offending
/// constraint is named in the message.
class ConstraintViolation : public Error {
  public:
    explicit ConstraintViolation(const std::string &message)
        : Error(ErrorKind::constraint, message) {}
};

/// The search for a certificate padding constant did not converge below the
/// configured ceiling.
class BisectionFailure : public Error {
  public:
    explicit BisectionFailure(const std::string &message)
        : Error(ErrorKind::constraint, message) {}
};

/// Serialized input could not be parsed into the expected shape.
class ParseError : public Error {
  public:
    explicit ParseError(const std::string &message)
        : Error(ErrorKind::validation, message) {}
};

} // namespace weakcoin
